"""Command line front end and the plain-text file formats.

HLA (algebras), one declaration per line, ``#`` starts a comment::

    dim 3
    basis e1 e2 e3
    flavor lie
    bracket e1 e2 = 1 e3
    twist e3 = 2 e3 + -1/2 e1

Unlisted brackets are zero.  A basis element without a ``twist`` line is
fixed by the twist; write ``twist e1 = 0`` for a zero image.

REP (representations)::

    algebra h3.hla            # path relative to the REP file, or
    algebra {                 # an inline HLA block closed by "}"
    ...
    }
    module_dim 7
    action e1 row 1 = 0 0 0 0 0 0 -1
    beta row 1 = 1 0 0 0 0 0 0

Action rows that are not listed are zero; beta rows that are not listed are
rows of the identity.

CERT files are REP files plus ``path``, ``verdict <law> = true|false``,
``nilindex <n>`` and ``trace <text>`` lines.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import (
    AntisymmetryConflict,
    DimensionMismatch,
    HomLieError,
    ParseError,
)
from .exactla import ZERO, Matrix, Subspace, poly_str, unit_vector
from .homcore import (
    HomAlgebra,
    center,
    check_hom_lie,
    check_multiplicative,
    check_nondegenerate,
    current_algebra,
    lower_central_series,
    nilindex,
    untwist,
    yau_twist,
)
from .homrep import HomRepresentation, tensor_rep

FLAVOR_WORDS = {"lie": "lie", "assoc": "associative", "associative": "associative", "plain": "plain"}
FLAVOR_OUT = {"lie": "lie", "associative": "assoc", "plain": "plain"}
VERDICT_LAWS = ("faithful", "nilpotent", "multiplicative", "nondegenerate")

# --------------------------------------------------------------------------
# scalars and linear combinations
# --------------------------------------------------------------------------


def parse_scalar(tok: str, line: int = 0, column: int = 0) -> Fraction:
    try:
        if "." in tok or "e" in tok.lower():
            raise ValueError
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coefficient {tok!r}", line, column) from None


def format_scalar(x: Fraction) -> str:
    return str(x)


def _tokens(text: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with their 1-based columns."""
    out = []
    i, n = 0, len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not text[j].isspace():
            j += 1
        out.append((text[i:j], i + 1))
        i = j
    return out


def _parse_combination(toks: list[tuple[str, int]], index: dict[str, int], dim: int,
                       line: int) -> tuple:
    """``c1 b1 + c2 b2 - c3 b3`` (or a lone ``0``) into a coordinate vector."""
    vec = [ZERO] * dim
    if len(toks) == 1 and toks[0][0] == "0":
        return tuple(vec)
    if not toks:
        raise ParseError("empty right-hand side", line, 0)
    pos = 0
    sign = 1
    first = True
    while pos < len(toks):
        tok, col = toks[pos]
        if tok in ("+", "-"):
            if first and tok == "+":
                raise ParseError("unexpected '+'", line, col)
            sign = -1 if tok == "-" else 1
            pos += 1
            if pos >= len(toks):
                raise ParseError("dangling sign", line, col)
            tok, col = toks[pos]
        elif not first:
            raise ParseError(f"expected '+' or '-' before {tok!r}", line, col)
        coeff = parse_scalar(tok, line, col)
        pos += 1
        if pos >= len(toks):
            raise ParseError(f"coefficient {tok!r} has no basis element", line, col)
        name, ncol = toks[pos]
        if name not in index:
            raise ParseError(f"unknown basis element {name!r}", line, ncol)
        vec[index[name]] += sign * coeff
        pos += 1
        first = False
        sign = 1
    return tuple(vec)


def _format_combination(v: Sequence, names: Sequence[str]) -> str:
    terms = [f"{format_scalar(x)} {names[i]}" for i, x in enumerate(v) if x]
    return " + ".join(terms) if terms else "0"


def _clean(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


# --------------------------------------------------------------------------
# HLA
# --------------------------------------------------------------------------


def parse_algebra(text: str, first_line: int = 1) -> HomAlgebra:
    dim = None
    names: list[str] | None = None
    flavor = "lie"
    index: dict[str, int] = {}
    brackets: dict[tuple[int, int], tuple[tuple, int]] = {}
    twists: dict[int, tuple] = {}
    pending: list[tuple[int, list]] = []
    for offset, raw in enumerate(text.splitlines()):
        ln = first_line + offset
        toks = _tokens(_clean(raw))
        if not toks:
            continue
        head, col = toks[0]
        if head == "dim":
            if dim is not None:
                raise ParseError("dim declared twice", ln, col)
            if len(toks) != 2:
                raise ParseError("expected 'dim <d>'", ln, col)
            try:
                dim = int(toks[1][0])
            except ValueError:
                raise ParseError(f"bad dimension {toks[1][0]!r}", ln, toks[1][1]) from None
            if dim < 0:
                raise ParseError("negative dimension", ln, toks[1][1])
        elif head == "basis":
            if names is not None:
                raise ParseError("basis declared twice", ln, col)
            names = [t for t, _ in toks[1:]]
            for t, c in toks[1:]:
                if t in index:
                    raise ParseError(f"basis element {t!r} repeated", ln, c)
                if t in ("+", "-", "=") or t[0].isdigit():
                    raise ParseError(f"bad basis name {t!r}", ln, c)
                index[t] = len(index)
        elif head == "flavor":
            if len(toks) != 2 or toks[1][0] not in FLAVOR_WORDS:
                raise ParseError("expected 'flavor lie|assoc'", ln, col)
            flavor = FLAVOR_WORDS[toks[1][0]]
        elif head in ("bracket", "twist"):
            pending.append((ln, toks))
        else:
            raise ParseError(f"unknown declaration {head!r}", ln, col)
    if dim is None:
        raise ParseError("missing 'dim' line", first_line, 1)
    if names is None:
        names = [f"e{i + 1}" for i in range(dim)]
        index = {n: i for i, n in enumerate(names)}
    if len(names) != dim:
        raise DimensionMismatch(f"dim {dim} but {len(names)} basis names", first_line, 1)
    for ln, toks in pending:
        head, col = toks[0]
        if head == "bracket":
            if len(toks) < 5 or toks[3][0] != "=":
                raise ParseError("expected 'bracket <bi> <bj> = ...'", ln, col)
            ij = []
            for t, c in toks[1:3]:
                if t not in index:
                    raise ParseError(f"unknown basis element {t!r}", ln, c)
                ij.append(index[t])
            i, j = ij
            vec = _parse_combination(toks[4:], index, dim, ln)
            if (i, j) in brackets:
                raise ParseError(f"bracket {names[i]} {names[j]} declared twice", ln, col)
            if flavor == "lie":
                if i == j and any(vec):
                    raise AntisymmetryConflict(f"[{names[i]},{names[i]}] must vanish", ln, col)
                if (j, i) in brackets:
                    other = brackets[(j, i)][0]
                    if other != tuple(-x for x in vec):
                        raise AntisymmetryConflict(
                            f"[{names[i]},{names[j]}] contradicts line {brackets[(j, i)][1]}", ln, col)
            brackets[(i, j)] = (vec, ln)
        else:
            if len(toks) < 4 or toks[2][0] != "=":
                raise ParseError("expected 'twist <bi> = ...'", ln, col)
            t, c = toks[1]
            if t not in index:
                raise ParseError(f"unknown basis element {t!r}", ln, c)
            i = index[t]
            if i in twists:
                raise ParseError(f"twist of {t} declared twice", ln, col)
            twists[i] = _parse_combination(toks[3:], index, dim, ln)
    table = [[(ZERO,) * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j), (vec, _) in brackets.items():
        table[i][j] = vec
        if flavor == "lie" and (j, i) not in brackets:
            table[j][i] = tuple(-x for x in vec)
    cols = [twists.get(i, unit_vector(dim, i)) for i in range(dim)]
    twist = Matrix.from_columns(cols, dim) if dim else Matrix.zeros(0)
    return HomAlgebra(dim, table, twist, flavor, names)


def serialize_algebra(L: HomAlgebra) -> str:
    names = L.names
    out = [f"dim {L.dim}"]
    if L.dim:
        out.append("basis " + " ".join(names))
    out.append(f"flavor {FLAVOR_OUT[L.flavor]}")
    for i in range(L.dim):
        for j in range(L.dim):
            if L.flavor == "lie" and j <= i:
                continue
            v = L.structure[i][j]
            if any(v):
                out.append(f"bracket {names[i]} {names[j]} = {_format_combination(v, names)}")
    for i in range(L.dim):
        col = L.twist.column(i)
        if col != unit_vector(L.dim, i):
            out.append(f"twist {names[i]} = {_format_combination(col, names)}")
    return "\n".join(out) + "\n"


def parse_endomorphism(text: str, L: HomAlgebra) -> Matrix:
    """Lines ``map <bi> = <combination>``; unlisted elements are fixed."""
    index = {n: i for i, n in enumerate(L.names)}
    cols: dict[int, tuple] = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(_clean(raw))
        if not toks:
            continue
        head, col = toks[0]
        if head not in ("map", "twist") or len(toks) < 4 or toks[2][0] != "=":
            raise ParseError("expected 'map <bi> = ...'", ln, col)
        t, c = toks[1]
        if t not in index:
            raise ParseError(f"unknown basis element {t!r}", ln, c)
        if index[t] in cols:
            raise ParseError(f"image of {t} declared twice", ln, col)
        cols[index[t]] = _parse_combination(toks[3:], index, L.dim, ln)
    return Matrix.from_columns([cols.get(i, unit_vector(L.dim, i)) for i in range(L.dim)], L.dim)


# --------------------------------------------------------------------------
# REP and CERT
# --------------------------------------------------------------------------


def _split_inline(lines: list[str], start: int) -> tuple[str, int]:
    """Collect an inline ``algebra {`` block; returns its text and the closing index."""
    body = []
    for k in range(start + 1, len(lines)):
        if _clean(lines[k]).strip() == "}":
            return "\n".join(body), k
        body.append(lines[k])
    raise ParseError("unterminated inline algebra block", start + 1, 1)


def _parse_rep_lines(text: str, base_dir: Path | None, algebra: HomAlgebra | None):
    lines = text.splitlines()
    L = algebra
    m = None
    action_rows: dict[tuple[int, int], tuple] = {}
    beta_rows: dict[int, tuple] = {}
    extra: list[tuple[int, list]] = []
    k = 0
    pending = []
    while k < len(lines):
        ln = k + 1
        toks = _tokens(_clean(lines[k]))
        if not toks:
            k += 1
            continue
        head, col = toks[0]
        if head == "algebra":
            if len(toks) == 2 and toks[1][0] == "{":
                body, end = _split_inline(lines, k)
                parsed = parse_algebra(body, first_line=ln + 1)
                k = end
            elif len(toks) == 2:
                path = Path(toks[1][0])
                if base_dir is not None and not path.is_absolute():
                    path = base_dir / path
                try:
                    parsed = parse_algebra(path.read_text())
                except OSError as exc:
                    raise ParseError(f"cannot read algebra file: {exc}", ln, toks[1][1]) from None
            else:
                raise ParseError("expected 'algebra <path>' or 'algebra {'", ln, col)
            if L is None:
                L = parsed
            elif parsed != L:
                raise DimensionMismatch("referenced algebra differs from the one supplied", ln, col)
        elif head == "module_dim":
            if len(toks) != 2:
                raise ParseError("expected 'module_dim <m>'", ln, col)
            try:
                m = int(toks[1][0])
            except ValueError:
                raise ParseError(f"bad module dimension {toks[1][0]!r}", ln, toks[1][1]) from None
        elif head in ("action", "beta"):
            pending.append((ln, toks))
        else:
            extra.append((ln, toks))
        k += 1
    if L is None:
        raise ParseError("missing 'algebra' line", 1, 1)
    if m is None:
        raise ParseError("missing 'module_dim' line", 1, 1)
    index = {n: i for i, n in enumerate(L.names)}
    for ln, toks in pending:
        head, col = toks[0]
        if head == "action":
            if len(toks) < 5 or toks[2][0] != "row" or toks[4][0] != "=":
                raise ParseError("expected 'action <bi> row <r> = ...'", ln, col)
            if toks[1][0] not in index:
                raise ParseError(f"unknown basis element {toks[1][0]!r}", ln, toks[1][1])
            key = (index[toks[1][0]], _row_number(toks[3], m, ln))
            coeffs = toks[5:]
            store = action_rows
        else:
            if len(toks) < 4 or toks[1][0] != "row" or toks[3][0] != "=":
                raise ParseError("expected 'beta row <r> = ...'", ln, col)
            key = _row_number(toks[2], m, ln)
            coeffs = toks[4:]
            store = beta_rows
        if len(coeffs) != m:
            raise DimensionMismatch(f"row has {len(coeffs)} entries, expected {m}", ln, col)
        if key in store:
            raise ParseError("row declared twice", ln, col)
        store[key] = tuple(parse_scalar(t, ln, c) for t, c in coeffs)
    actions = []
    for i in range(L.dim):
        actions.append(Matrix(m, m, [action_rows.get((i, r), (ZERO,) * m) for r in range(m)]))
    beta = Matrix(m, m, [beta_rows.get(r, unit_vector(m, r)) for r in range(m)])
    return HomRepresentation(L, m, tuple(actions), beta), extra


def _row_number(tok: tuple[str, int], m: int, ln: int) -> int:
    try:
        r = int(tok[0])
    except ValueError:
        raise ParseError(f"bad row number {tok[0]!r}", ln, tok[1]) from None
    if not 1 <= r <= m:
        raise DimensionMismatch(f"row {r} outside 1..{m}", ln, tok[1])
    return r - 1


def parse_rep(text: str, base_dir: Path | None = None, algebra: HomAlgebra | None = None
              ) -> HomRepresentation:
    rho, extra = _parse_rep_lines(text, base_dir, algebra)
    for ln, toks in extra:
        raise ParseError(f"unknown declaration {toks[0][0]!r}", ln, toks[0][1])
    return rho


def serialize_rep(rho: HomRepresentation, algebra_path: str | None = None) -> str:
    L = rho.algebra
    out = []
    if algebra_path is None:
        out.append("algebra {")
        out.append(serialize_algebra(L).rstrip("\n"))
        out.append("}")
    else:
        out.append(f"algebra {algebra_path}")
    m = rho.module_dim
    out.append(f"module_dim {m}")
    for i, a in enumerate(rho.actions):
        for r in range(m):
            row = a.row(r)
            if any(row):
                out.append(f"action {L.names[i]} row {r + 1} = " + " ".join(map(format_scalar, row)))
    for r in range(m):
        row = rho.beta.row(r)
        if row != unit_vector(m, r):
            out.append(f"beta row {r + 1} = " + " ".join(map(format_scalar, row)))
    return "\n".join(out) + "\n"


def serialize_certificate(cert, algebra_path: str | None = None) -> str:
    out = [serialize_rep(cert.representation, algebra_path).rstrip("\n")]
    out.append(f"path {cert.path}")
    for law in VERDICT_LAWS:
        out.append(f"verdict {law} = {'true' if getattr(cert, law) else 'false'}")
    if cert.nilindex is not None:
        out.append(f"nilindex {cert.nilindex}")
    for t in cert.trace:
        out.append(f"trace {t}")
    return "\n".join(out) + "\n"


def parse_certificate(text: str, base_dir: Path | None = None, algebra: HomAlgebra | None = None):
    from .adopipe import AdoCertificate

    rho, extra = _parse_rep_lines(text, base_dir, algebra)
    verdicts: dict[str, bool] = {}
    ni = None
    path = "graded"
    trace = []
    lines = text.splitlines()
    for ln, toks in extra:
        head, col = toks[0]
        if head == "verdict":
            if len(toks) != 4 or toks[1][0] not in VERDICT_LAWS or toks[2][0] != "=" \
                    or toks[3][0] not in ("true", "false"):
                raise ParseError("expected 'verdict <law> = true|false'", ln, col)
            verdicts[toks[1][0]] = toks[3][0] == "true"
        elif head == "nilindex":
            try:
                ni = int(toks[1][0])
            except (IndexError, ValueError):
                raise ParseError("expected 'nilindex <n>'", ln, col) from None
        elif head == "path" and len(toks) == 2:
            path = toks[1][0]
        elif head == "trace":
            trace.append(_clean(lines[ln - 1]).lstrip()[len("trace"):].strip())
        else:
            raise ParseError(f"unknown declaration {head!r}", ln, col)
    if not verdicts.get("nilpotent", False):
        ni = None
    return AdoCertificate(rho, verdicts.get("faithful", False), ni,
                          verdicts.get("multiplicative", False),
                          verdicts.get("nondegenerate", False), tuple(trace), path)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


class Report:
    """Ordered key/value report rendered as text or JSON."""

    def __init__(self, command: str):
        self.command = command
        self.items: list[tuple[str, object]] = []

    def add(self, key: str, value) -> None:
        self.items.append((key, value))

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps({"command": self.command, **{k: _jsonable(v) for k, v in self.items}},
                              sort_keys=False)
        lines = []
        for k, v in self.items:
            if isinstance(v, bool):
                v = "true" if v else "false"
            elif isinstance(v, (list, tuple)):
                v = " ".join(str(x) for x in v) if v else "-"
            lines.append(f"{k}: {v}")
        return "\n".join(lines)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _read_algebra(path: str) -> HomAlgebra:
    try:
        return parse_algebra(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _read_rep(path: str, algebra: HomAlgebra | None = None) -> HomRepresentation:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    rho, _ = _parse_rep_lines(text, p.parent, algebra)
    return rho


def _emit(text: str, out: str | None, report: Report, key: str = "output") -> None:
    if out:
        Path(out).write_text(text)
        report.add(key, out)
    else:
        sys.stdout.write(text)


def _cmd_check(args, report: Report) -> int:
    L = _read_algebra(args.algebra)
    if L.flavor == "associative":
        from .homassoc import check_hom_associative
        main = check_hom_associative(L)
    else:
        main = check_hom_lie(L)
    verdicts = [main, check_multiplicative(L), check_nondegenerate(L)]
    for v in verdicts:
        report.add(v.law, v.ok)
        if not v.ok and v.witness is not None:
            report.add(f"{v.law}-witness", [str(x) for x in _flatten(v.witness)])
    return 0 if all(verdicts) else 1


def _flatten(w):
    if isinstance(w, (list, tuple)):
        return list(w)
    return [w]


def _compact(v: Sequence, names: Sequence[str]) -> str:
    """2e1-e3 style rendering for reports."""
    out = ""
    for c, name in zip(v, names):
        if not c:
            continue
        sign = "-" if c < 0 else ("+" if out else "")
        mag = abs(c)
        out += sign + ("" if mag == 1 else format_scalar(mag)) + name
    return out or "0"


def _subspace_names(S: Subspace, names) -> list[str]:
    return [_compact(v, names) for v in S.basis]


def _cmd_info(args, report: Report) -> int:
    L = _read_algebra(args.algebra)
    report.add("dim", L.dim)
    report.add("flavor", FLAVOR_OUT[L.flavor])
    report.add("hom-lie", check_hom_lie(L).ok if L.flavor == "lie" else False)
    report.add("multiplicative", check_multiplicative(L).ok)
    report.add("nondegenerate", check_nondegenerate(L).ok)
    report.add("abelian", L.is_abelian())
    if L.flavor == "lie":
        report.add("center", _subspace_names(center(L), L.names))
        report.add("lower-central-series", [S.dim for S in lower_central_series(L)])
        ni = nilindex(L)
        report.add("nilpotent", ni is not None)
        report.add("nilindex", ni if ni is not None else "none")
    return 0


def _cmd_yau(args, report: Report) -> int:
    L = _read_algebra(args.algebra)
    try:
        phi = parse_endomorphism(Path(args.endo).read_text(), L)
    except OSError as exc:
        raise ParseError(f"cannot read {args.endo}: {exc}") from None
    _emit(serialize_algebra(yau_twist(L, phi)), args.out, report)
    return 0


def _cmd_untwist(args, report: Report) -> int:
    _emit(serialize_algebra(untwist(_read_algebra(args.algebra))), args.out, report)
    return 0


def _cmd_current(args, report: Report) -> int:
    C = current_algebra(_read_algebra(args.algebra), args.n)
    _emit(serialize_algebra(C.algebra), args.out, report)
    return 0


def _cmd_free(args, report: Report) -> int:
    from .freehl import TwistPolynomial, free_multiplicative_nilpotent

    try:
        f = TwistPolynomial.parse(args.poly)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    M, P = free_multiplicative_nilpotent(args.gens, args.cls, f)
    report.add("dim", M.dim)
    report.add("degrees", list(P.degrees))
    _emit(serialize_algebra(M), args.out, report)
    return 0


def _cmd_present(args, report: Report) -> int:
    from .freehl import present_as_quotient

    L = _read_algebra(args.algebra)
    q = present_as_quotient(L)
    report.add("k", q.k)
    report.add("n", q.n)
    report.add("f", poly_str(q.f.coefficients))
    report.add("free-dim", q.free.dim)
    report.add("kernel-dim", q.kernel_ideal.dim)
    return 0


def _cmd_ado(args, report: Report) -> int:
    from .adopipe import ado

    L = _read_algebra(args.algebra)
    cert = ado(L, tensor_bound=args.tensor_bound, path=args.path)
    ref = None
    if args.out:
        ref = _relative_ref(args.algebra, args.out)
        Path(args.out).write_text(serialize_rep(cert.representation, ref))
        report.add("rep", args.out)
    if args.cert:
        Path(args.cert).write_text(serialize_certificate(cert, _relative_ref(args.algebra, args.cert)))
        report.add("cert", args.cert)
    report.add("path", cert.path)
    report.add("module-dim", cert.module_dim)
    for law in VERDICT_LAWS:
        report.add(law, bool(getattr(cert, law)))
    report.add("nilindex", cert.nilindex if cert.nilindex is not None else "none")
    return 0 if cert.valid else 1


def _relative_ref(algebra_path: str, written: str) -> str:
    """Reference to the algebra file as seen from the directory of ``written``."""
    import os

    return os.path.relpath(Path(algebra_path).resolve(), Path(written).resolve().parent)


def _cmd_verify(args, report: Report) -> int:
    from .adopipe import verify_certificate

    L = _read_algebra(args.algebra)
    rho = _read_rep(args.rep, algebra=L)
    res = verify_certificate(L, rho)
    for v in res.laws:
        report.add(v.law, v.ok)
    report.add("nilindex", res.nilindex if res.nilindex is not None else "none")
    return 0 if res.ok else 1


def _cmd_tensor(args, report: Report) -> int:
    rho = _read_rep(args.first)
    tau = _read_rep(args.second, algebra=rho.algebra)
    _emit(serialize_rep(tensor_rep(rho, tau)), args.out, report)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homlie", description="Exact computations with Hom-Lie algebras.")
    p.add_argument("--json", action="store_true", help="machine-readable reports")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.set_defaults(func=func)
        return sp

    sp = cmd("check", _cmd_check, "check the defining identity, multiplicativity and nondegeneracy")
    sp.add_argument("algebra")
    sp = cmd("info", _cmd_info, "center, lower central series, nilindex and predicates")
    sp.add_argument("algebra")
    sp = cmd("yau-twist", _cmd_yau, "twist a Lie algebra along an endomorphism")
    sp.add_argument("algebra")
    sp.add_argument("--endo", required=True, help="file of 'map <bi> = ...' lines")
    sp.add_argument("--out")
    sp = cmd("untwist", _cmd_untwist, "recover the Lie algebra of a nondegenerate twisted one")
    sp.add_argument("algebra")
    sp.add_argument("--out")
    sp = cmd("current", _cmd_current, "current algebra L (x) tQ[t]/(t^n)")
    sp.add_argument("algebra")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--out")
    sp = cmd("free", _cmd_free, "free nilpotent multiplicative Hom-Lie algebra")
    sp.add_argument("--gens", type=int, required=True)
    sp.add_argument("--class", dest="cls", type=int, required=True)
    sp.add_argument("--poly", required=True, help="monic polynomial in T, e.g. 'T^2-2'")
    sp.add_argument("--out")
    sp = cmd("present", _cmd_present, "present as a quotient of a free algebra")
    sp.add_argument("algebra")
    sp = cmd("ado", _cmd_ado, "faithful nilpotent multiplicative nondegenerate representation")
    sp.add_argument("algebra")
    sp.add_argument("--tensor-bound", type=int, default=4)
    sp.add_argument("--path", choices=("auto", "graded", "general"), default="auto")
    sp.add_argument("--out", help="REP file to write")
    sp.add_argument("--cert", help="CERT file to write")
    sp = cmd("verify-rep", _cmd_verify, "recompute every certificate law from the files")
    sp.add_argument("algebra")
    sp.add_argument("rep")
    sp = cmd("tensor-rep", _cmd_tensor, "tensor product of two representations")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--out")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    report = Report(args.command)
    as_json = args.json
    try:
        code = args.func(args, report)
    except HomLieError as exc:
        if as_json:
            print(json.dumps({"command": args.command, "error": exc.code, "message": str(exc)}))
        else:
            print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        if as_json:
            print(json.dumps({"command": args.command, "error": "invalid-input", "message": str(exc)}))
        else:
            print(f"error[invalid-input]: {exc}", file=sys.stderr)
        return 2
    if report.items:
        print(report.render(as_json))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
