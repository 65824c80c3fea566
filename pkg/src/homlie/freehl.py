"""Free nilpotent multiplicative Hom-Lie algebras M_{k,n,f}.

Generators x_1..x_k carry twist powers a^l x_i for 0 <= l < deg f; the twist
acts on them through the companion matrix of f.  Higher degrees are built
one at a time: the formal space of degree d is spanned by brackets [u, v] of
basis elements u < v of lower degree, and the basis of degree d is read off
after quotienting by

  * Hom-Jacobi instances on basis triples of total degree d, and
  * f(a) applied to the formal space (the ideal generated by f(a)(L)).

Because the twist of a formal bracket is defined as [a u, a v], the result
is multiplicative by construction.  Brackets of total degree >= n vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import NilindexExceeded, PolynomialNotSatisfied, PreconditionFailed
from .exactla import (
    ONE,
    ZERO,
    Matrix,
    Subspace,
    Vector,
    kernel,
    minpoly,
    poly_of_matrix,
    poly_str,
    poly_trim,
    to_scalar,
)
from .homcore import (
    HomAlgebra,
    check_homomorphism,
    check_multiplicative,
    check_nondegenerate,
    is_ideal,
    nilindex,
)

# --------------------------------------------------------------------------
# words
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    gen: int  # 0-based generator
    power: int

    @property
    def degree(self) -> int:
        return 1

    def key(self) -> tuple:
        return (1, (self.gen, self.power))

    def __str__(self) -> str:
        x = f"x{self.gen + 1}"
        if self.power == 0:
            return x
        if self.power == 1:
            return f"a.{x}"
        return f"a{self.power}.{x}"


@dataclass(frozen=True)
class Bracket:
    left: "BracketWord"
    right: "BracketWord"

    @property
    def degree(self) -> int:
        return self.left.degree + self.right.degree

    def key(self) -> tuple:
        return (self.degree, self.left.key(), self.right.key())

    def __str__(self) -> str:
        return f"[{self.left},{self.right}]"


BracketWord = Leaf | Bracket


def word_key(w: BracketWord) -> tuple:
    """Total order: degree, then left subtree, then right; leaves by (gen, power)."""
    return w.key()


# --------------------------------------------------------------------------
# twist polynomials
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TwistPolynomial:
    """Monic polynomial, coefficients listed from the constant term up."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        c = poly_trim(tuple(to_scalar(x) for x in self.coefficients))
        if len(c) < 2:
            raise ValueError("twist polynomial must have degree >= 1")
        if c[-1] != ONE:
            raise ValueError("twist polynomial must be monic")
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def parse(cls, text: str, var: str = "T") -> "TwistPolynomial":
        import sympy

        sym = sympy.Symbol(var)
        try:
            expr = sympy.sympify(text.replace("^", "**"), locals={var: sym})
            poly = sympy.Poly(expr, sym, domain="QQ")
        except (sympy.SympifyError, sympy.PolynomialError, TypeError) as exc:
            raise ValueError(f"cannot read polynomial {text!r}: {exc}") from None
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
        return cls(tuple(coeffs))

    @classmethod
    def of_matrix(cls, m: Matrix) -> "TwistPolynomial":
        return cls(minpoly(m))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def free_term(self) -> Fraction:
        return self.coefficients[0]

    def companion(self) -> Matrix:
        """Matrix of multiplication by T on the basis 1, T, ..., T^(m-1)."""
        m = self.degree
        rows = [[ZERO] * m for _ in range(m)]
        for l in range(m - 1):
            rows[l + 1][l] = ONE
        for j in range(m):
            rows[j][m - 1] = -self.coefficients[j]
        return Matrix(m, m, rows)

    def of(self, m: Matrix) -> Matrix:
        return poly_of_matrix(self.coefficients, m)

    def __str__(self) -> str:
        return poly_str(self.coefficients)


# --------------------------------------------------------------------------
# presentation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GradedPresentation:
    k: int
    n: int
    f: TwistPolynomial
    algebra: HomAlgebra
    words: tuple  # BracketWord per basis index
    degrees: tuple[int, ...]
    # basis index -> (u, v) with word [w_u, w_v]; leaves map to None
    factors: tuple
    # degree -> (formal pair list, relation subspace in formal coordinates)
    relations: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def degree_indices(self, d: int) -> list[int]:
        return [i for i, e in enumerate(self.degrees) if e == d]

    def leaf_index(self, gen: int, power: int) -> int:
        return gen * self.f.degree + power


class _Builder:
    """Incremental degree-by-degree construction."""

    def __init__(self, k: int, n: int, f: TwistPolynomial, reduce_all_degrees: bool):
        self.k, self.n, self.f = k, n, f
        self.reduce_all = reduce_all_degrees
        m = f.degree
        self.words: list = [Leaf(i, l) for i in range(k) for l in range(m)]
        self.degrees: list[int] = [1] * (k * m)
        self.factors: list = [None] * (k * m)
        comp = f.companion()
        # sparse twist columns and bracket table, keyed by basis index
        self.alpha_cols: list[dict[int, Fraction]] = []
        for i in range(k):
            for l in range(m):
                col = comp.column(l)
                self.alpha_cols.append({i * m + r: x for r, x in enumerate(col) if x})
        self.table: dict[tuple[int, int], dict[int, Fraction]] = {}
        self.relations: dict = {}

    def by_degree(self, d: int) -> list[int]:
        return [i for i, e in enumerate(self.degrees) if e == d]

    def bracket(self, a: dict, b: dict) -> dict:
        """Bracket of two sparse vectors already present in the table."""
        out: dict[int, Fraction] = {}
        for i, x in a.items():
            for j, y in b.items():
                if i == j:
                    continue
                if i < j:
                    entry, s = self.table.get((i, j)), 1
                else:
                    entry, s = self.table.get((j, i)), -1
                if not entry:
                    continue
                xy = x * y * s
                for r, c in entry.items():
                    out[r] = out.get(r, ZERO) + xy * c
        return {r: c for r, c in out.items() if c}

    def formal(self, a: dict, b: dict, pos: dict) -> dict:
        """Bracket into the formal space of pairs; ``pos`` maps (u, v) with u < v to a slot."""
        out: dict[int, Fraction] = {}
        for i, x in a.items():
            for j, y in b.items():
                if i == j:
                    continue
                if i < j:
                    p, s = pos[(i, j)], 1
                else:
                    p, s = pos[(j, i)], -1
                out[p] = out.get(p, ZERO) + s * x * y
        return {p: c for p, c in out.items() if c}

    def build_degree(self, d: int) -> None:
        lower = {e: self.by_degree(e) for e in range(1, d)}
        pairs = []
        for a in range(1, d // 2 + 1):
            b = d - a
            for u in lower[a]:
                for v in lower[b]:
                    if u < v:
                        pairs.append((u, v))
        pairs.sort(key=lambda p: (self.words[p[0]].key(), self.words[p[1]].key()))
        pos = {p: s for s, p in enumerate(pairs)}
        N = len(pairs)
        if N == 0:
            self.relations[d] = ((), Subspace.zero(0))
            return
        unit = lambda i: {i: ONE}  # noqa: E731
        rel_rows: list[list[Fraction]] = []

        def dense(sv: dict) -> list:
            row = [ZERO] * N
            for p, c in sv.items():
                row[p] = c
            return row

        # Hom-Jacobi on basis triples u < v < w of total degree d
        lower_all = [i for e in range(1, d) for i in lower[e]]
        for u, v, w in combinations(lower_all, 3):
            if self.degrees[u] + self.degrees[v] + self.degrees[w] != d:
                continue
            terms: dict[int, Fraction] = {}
            for (p, q, r) in ((u, v, w), (w, u, v), (v, w, u)):
                inner = self.bracket(unit(p), unit(q))
                if not inner:
                    continue
                for s, c in self.formal(inner, self.alpha_cols[r], pos).items():
                    terms[s] = terms.get(s, ZERO) + c
            terms = {s: c for s, c in terms.items() if c}
            if terms:
                rel_rows.append(dense(terms))

        # twist on formal pairs: a[u, v] = [a u, a v]
        alpha_formal = [self.formal(self.alpha_cols[u], self.alpha_cols[v], pos) for u, v in pairs]
        if self.reduce_all:
            coeffs = self.f.coefficients
            for s in range(N):
                vec = {s: ONE}
                acc: dict[int, Fraction] = {}
                for c in coeffs:
                    if c:
                        for p, x in vec.items():
                            acc[p] = acc.get(p, ZERO) + c * x
                    nxt: dict[int, Fraction] = {}
                    for p, x in vec.items():
                        for q, y in alpha_formal[p].items():
                            nxt[q] = nxt.get(q, ZERO) + x * y
                    vec = {q: y for q, y in nxt.items() if y}
                acc = {p: x for p, x in acc.items() if x}
                if acc:
                    rel_rows.append(dense(acc))

        R = Subspace(N, rel_rows)
        self.relations[d] = (tuple(pairs), R)
        # greedy basis: pivot columns of the annihilator pick the first
        # formal pairs independent modulo R, and its rows give coordinates
        ann = R.annihilator()
        chosen = ann.pivots
        coord_rows = [dict((p, x) for p, x in enumerate(row) if x) for row in ann.basis]

        def coords(sv: dict) -> dict:
            out = {}
            for t, row in enumerate(coord_rows):
                c = sum((x * sv[p] for p, x in row.items() if p in sv), ZERO)
                if c:
                    out[t] = c
            return out

        base = len(self.words)
        new_index = {}
        for t, s in enumerate(chosen):
            u, v = pairs[s]
            new_index[t] = base + t
            self.words.append(Bracket(self.words[u], self.words[v]))
            self.degrees.append(d)
            self.factors.append((u, v))
        # bracket entries landing in degree d
        for s, (u, v) in enumerate(pairs):
            cs = coords({s: ONE})
            if cs:
                self.table[(u, v)] = {new_index[t]: c for t, c in cs.items()}
        for t, s in enumerate(chosen):
            cs = coords(alpha_formal[s])
            self.alpha_cols.append({new_index[q]: c for q, c in cs.items()})

    def finish(self) -> GradedPresentation:
        dim = len(self.words)
        zero = (ZERO,) * dim
        struct = [[zero] * dim for _ in range(dim)]
        for (u, v), entry in self.table.items():
            vec = [ZERO] * dim
            for r, c in entry.items():
                vec[r] = c
            struct[u][v] = tuple(vec)
            struct[v][u] = tuple(-x for x in vec)
        cols = []
        for col in self.alpha_cols:
            vec = [ZERO] * dim
            for r, c in col.items():
                vec[r] = c
            cols.append(vec)
        twist = Matrix.from_columns(cols, dim) if dim else Matrix.zeros(0)
        names = [str(w) for w in self.words]
        M = HomAlgebra(dim, struct, twist, "lie", names)
        return GradedPresentation(self.k, self.n, self.f, M, tuple(self.words),
                                  tuple(self.degrees), tuple(self.factors), dict(self.relations))


def free_multiplicative_nilpotent(k: int, n: int, f: TwistPolynomial | Sequence | str,
                                  reduce_all_degrees: bool = True
                                  ) -> tuple[HomAlgebra, GradedPresentation]:
    """M_{k,n,f} with its graded basis.

    ``reduce_all_degrees=False`` imposes f(a) = 0 on the generators only,
    which gives a larger algebra on which f(a) need not vanish in degree >= 2.
    """
    if isinstance(f, str):
        f = TwistPolynomial.parse(f)
    elif not isinstance(f, TwistPolynomial):
        f = TwistPolynomial(tuple(f))
    if k < 1 or n < 2:
        raise PreconditionFailed("free algebra needs k >= 1 and n >= 2")
    b = _Builder(k, n, f, reduce_all_degrees)
    for d in range(2, n):
        b.build_degree(d)
    P = b.finish()
    return P.algebra, P


# --------------------------------------------------------------------------
# universal property
# --------------------------------------------------------------------------


def universal_map(M: GradedPresentation, targets: Sequence[Sequence], L: HomAlgebra) -> Matrix:
    """Homomorphism M -> L sending a^l x_i to a_L^l(targets[i])."""
    if len(targets) != M.k:
        raise ValueError(f"need {M.k} targets, got {len(targets)}")
    if not M.f.of(L.twist).is_zero():
        raise PolynomialNotSatisfied(f"f = {M.f} does not annihilate the twist of the target")
    mult = check_multiplicative(L)
    if not mult:
        raise PreconditionFailed("target must be multiplicative", witness=mult.witness)
    images: list[Vector] = []
    for idx, word in enumerate(M.words):
        if isinstance(word, Leaf):
            v = tuple(to_scalar(x) for x in targets[word.gen])
            for _ in range(word.power):
                v = L.alpha(v)
            images.append(v)
        else:
            u, v = M.factors[idx]
            images.append(L.product(images[u], images[v]))
    # brackets that vanish in M because of the degree cut must vanish in L
    for u in range(M.dim):
        for v in range(u + 1, M.dim):
            if M.degrees[u] + M.degrees[v] >= M.n:
                if any(L.product(images[u], images[v])):
                    raise NilindexExceeded(
                        f"[{M.words[u]}, {M.words[v]}] has degree >= {M.n} but a nonzero image",
                        witness=(u, v))
    phi = Matrix.from_columns(images, L.dim) if images else Matrix.zeros(L.dim, 0)
    hom = check_homomorphism(phi, M.algebra, L)
    if not hom:
        raise PreconditionFailed(f"induced map is not a homomorphism ({hom.law})", witness=hom.witness)
    return phi


@dataclass(frozen=True)
class QuotientPresentation:
    k: int
    n: int
    f: TwistPolynomial
    free: GradedPresentation
    surjection: Matrix  # dim L x dim M
    kernel_ideal: Subspace

    def __iter__(self):
        return iter((self.k, self.n, self.f, self.surjection, self.kernel_ideal))


def present_as_quotient(L: HomAlgebra) -> QuotientPresentation:
    """L = M_{k,n,f} / I with k = dim L, n = nilindex(L) and f the minimal polynomial."""
    if L.flavor != "lie":
        raise PreconditionFailed("present_as_quotient needs a Hom-Lie algebra")
    ni = nilindex(L)
    if ni is None:
        raise PreconditionFailed("algebra is not nilpotent")
    for check in (check_multiplicative, check_nondegenerate):
        v = check(L)
        if not v:
            raise PreconditionFailed(f"algebra fails {v.law}", witness=v.witness)
    if L.dim == 0:
        raise PreconditionFailed("zero algebra has no presentation")
    f = TwistPolynomial.of_matrix(L.twist)
    n = max(ni, 2)
    _, P = free_multiplicative_nilpotent(L.dim, n, f)
    targets = [Matrix.identity(L.dim).column(i) for i in range(L.dim)]
    phi = universal_map(P, targets, L)
    ker = kernel(phi)
    if not is_ideal(P.algebra, ker):  # pragma: no cover - kernels of homomorphisms are ideals
        raise PreconditionFailed("kernel of the surjection is not an ideal")
    return QuotientPresentation(L.dim, n, f, P, phi, ker)


def relation_soundness(P: GradedPresentation, phi: Matrix, L: HomAlgebra) -> bool:
    """Every relation used in the reduction maps to zero under ``phi``.

    A formal pair (u, v) evaluates to [phi(e_u), phi(e_v)] in L.
    """
    cols = phi.columns()
    for d, (pairs, R) in P.relations.items():
        if not pairs:
            continue
        values = [L.product(cols[u], cols[v]) for u, v in pairs]
        for rel in R.basis:
            acc = [ZERO] * L.dim
            for c, val in zip(rel, values):
                if c:
                    for r, x in enumerate(val):
                        acc[r] += c * x
            if any(acc):
                return False
    return True


__all__ = [
    "Leaf", "Bracket", "BracketWord", "word_key", "TwistPolynomial",
    "GradedPresentation", "QuotientPresentation", "free_multiplicative_nilpotent",
    "universal_map", "present_as_quotient", "relation_soundness",
]
