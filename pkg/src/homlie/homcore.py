"""Hom-algebras: data model, axiom checks and structural constructions.

A Hom-algebra is stored by its structure constants ``c[i][j]`` (the
coordinate vector of ``e_i * e_j``) together with the twist matrix, whose
j-th column is the image of ``e_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import (
    AnticommutativityError,
    DegenerateTwist,
    FieldExtensionNeeded,
    NotAHomomorphism,
    NotAnIdeal,
    NotNilpotent,
    PreconditionFailed,
)
from .exactla import (
    ZERO,
    Matrix,
    QuotientMap,
    Subspace,
    Vector,
    add_vectors,
    inverse,
    is_zero_vector,
    kernel,
    rational_eigenvectors,
    relative_complement,
    scale_vector,
    sub_vectors,
    to_scalar,
    unit_vector,
    zero_vector,
)

FLAVORS = ("lie", "associative", "plain")


@dataclass(frozen=True)
class Verdict:
    """Outcome of an identity check; falsy on failure."""

    ok: bool
    law: str
    witness: tuple | None = None
    residual: object = None

    def __bool__(self) -> bool:
        return self.ok


class HomAlgebra:
    """Finite-dimensional Hom-algebra over Q.

    ``structure[i][j]`` is the coordinate vector of ``e_i * e_j`` and
    ``twist`` is the matrix of the twist map.
    """

    __slots__ = ("dim", "structure", "twist", "flavor", "names", "_sparse")

    def __init__(self, dim: int, structure, twist: Matrix, flavor: str = "lie",
                 names: Sequence[str] | None = None):
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        table = tuple(tuple(tuple(to_scalar(x) for x in structure[i][j]) for j in range(dim))
                      for i in range(dim))
        for row in table:
            for v in row:
                if len(v) != dim:
                    raise ValueError("structure constants do not match the dimension")
        if twist.shape != (dim, dim):
            raise ValueError(f"twist must be {dim}x{dim}, got {twist.shape}")
        if flavor == "lie":
            for i in range(dim):
                for j in range(i, dim):
                    if table[i][j] != tuple(-x for x in table[j][i]):
                        raise AnticommutativityError(
                            f"c[{i}][{j}] != -c[{j}][{i}]", witness=(i, j))
        self.dim = dim
        self.structure = table
        self.twist = twist
        self.flavor = flavor
        self.names = tuple(names) if names is not None else tuple(f"e{i + 1}" for i in range(dim))
        self._sparse = None

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict, twist: Matrix | None = None,
                      flavor: str = "lie", names=None) -> "HomAlgebra":
        """Build from ``{(i, j): vector}`` (0-based); lie flavor completes antisymmetrically."""
        table = [[zero_vector(dim) for _ in range(dim)] for _ in range(dim)]
        for (i, j), v in brackets.items():
            v = tuple(to_scalar(x) for x in v)
            table[i][j] = v
            if flavor == "lie":
                table[j][i] = tuple(-x for x in v)
        twist = Matrix.identity(dim) if twist is None else twist
        return cls(dim, table, twist, flavor, names)

    def with_twist(self, twist: Matrix) -> "HomAlgebra":
        return HomAlgebra(self.dim, self.structure, twist, self.flavor, self.names)

    def sparse_table(self) -> list[tuple[int, int, list[tuple[int, Fraction]]]]:
        if self._sparse is None:
            out = []
            for i in range(self.dim):
                for j in range(self.dim):
                    nz = [(k, x) for k, x in enumerate(self.structure[i][j]) if x]
                    if nz:
                        out.append((i, j, nz))
            self._sparse = out
        return self._sparse

    def product(self, u: Sequence, v: Sequence) -> Vector:
        """Bilinear product of coordinate vectors."""
        out = [ZERO] * self.dim
        for i, j, nz in self.sparse_table():
            a = u[i]
            if not a:
                continue
            b = v[j]
            if not b:
                continue
            ab = a * b
            for k, x in nz:
                out[k] += ab * x
        return tuple(out)

    bracket = product

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def alpha(self, v: Sequence) -> Vector:
        return self.twist @ v

    def left_mult_matrix(self, u: Sequence) -> Matrix:
        """Matrix of v -> u * v."""
        d = self.dim
        data = [[ZERO] * d for _ in range(d)]
        for i, a in enumerate(u):
            if a:
                for j, v in enumerate(self.structure[i]):
                    for k, x in enumerate(v):
                        if x:
                            data[k][j] += a * x
        return Matrix(d, d, data)

    def right_mult_matrix(self, u: Sequence) -> Matrix:
        """Matrix of v -> v * u."""
        d = self.dim
        data = [[ZERO] * d for _ in range(d)]
        for j, a in enumerate(u):
            if a:
                for i in range(d):
                    for k, x in enumerate(self.structure[i][j]):
                        if x:
                            data[k][i] += a * x
        return Matrix(d, d, data)

    def is_abelian(self) -> bool:
        return not self.sparse_table()

    def __eq__(self, other) -> bool:
        return (isinstance(other, HomAlgebra) and self.dim == other.dim
                and self.flavor == other.flavor and self.structure == other.structure
                and self.twist == other.twist)

    def __hash__(self) -> int:
        return hash((self.dim, self.flavor, self.structure, self.twist))

    def __repr__(self) -> str:
        return f"HomAlgebra(dim={self.dim}, flavor={self.flavor!r}, products={len(self.sparse_table())})"


# --------------------------------------------------------------------------
# axiom checks
# --------------------------------------------------------------------------


def hom_jacobi_residual(L: HomAlgebra, x: Sequence, y: Sequence, z: Sequence) -> Vector:
    """[[x,y],a(z)] + [[z,x],a(y)] + [[y,z],a(x)]."""
    b = L.product
    a = L.alpha
    r = b(b(x, y), a(z))
    r = add_vectors(r, b(b(z, x), a(y)))
    return add_vectors(r, b(b(y, z), a(x)))


def check_anticommutative(A: HomAlgebra) -> Verdict:
    for i in range(A.dim):
        for j in range(i, A.dim):
            if A.structure[i][j] != tuple(-x for x in A.structure[j][i]):
                return Verdict(False, "anticommutativity", (i, j))
    return Verdict(True, "anticommutativity")


def check_hom_lie(L: HomAlgebra) -> Verdict:
    """Hom-Jacobi identity on basis triples; returns the first violation."""
    anti = check_anticommutative(L)
    if not anti:
        return anti
    # the cyclic sum is alternating once anticommutativity holds, so sorted
    # triples of distinct indices cover everything and give the lex-first witness
    for i, j, k in combinations(range(L.dim), 3):
        e = L.basis_vector
        r = hom_jacobi_residual(L, e(i), e(j), e(k))
        if any(r):
            return Verdict(False, "hom-jacobi", (i, j, k), r)
    return Verdict(True, "hom-jacobi")


def check_multiplicative(A: HomAlgebra) -> Verdict:
    cols = A.twist.columns()
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = A.twist @ A.structure[i][j]
            rhs = A.product(cols[i], cols[j])
            if lhs != rhs:
                return Verdict(False, "multiplicativity", (i, j), sub_vectors(lhs, rhs))
    return Verdict(True, "multiplicativity")


def check_nondegenerate(A: HomAlgebra) -> Verdict:
    ker = kernel(A.twist)
    if ker.is_zero():
        return Verdict(True, "nondegeneracy")
    return Verdict(False, "nondegeneracy", (ker.basis[0],), ker)


def check_homomorphism(phi: Matrix, source: HomAlgebra, target: HomAlgebra) -> Verdict:
    """phi(x*y) = phi(x)*phi(y) on basis pairs and phi o a = b o phi."""
    if phi.shape != (target.dim, source.dim):
        return Verdict(False, "shape", (phi.shape,))
    cols = phi.columns()
    for i in range(source.dim):
        for j in range(source.dim):
            lhs = phi @ source.structure[i][j]
            rhs = target.product(cols[i], cols[j])
            if lhs != rhs:
                return Verdict(False, "product", (i, j), sub_vectors(lhs, rhs))
    lhs = phi @ source.twist
    rhs = target.twist @ phi
    if lhs != rhs:
        bad = next(j for j in range(source.dim) if lhs.column(j) != rhs.column(j))
        return Verdict(False, "twist", (bad,), sub_vectors(lhs.column(bad), rhs.column(bad)))
    return Verdict(True, "homomorphism")


def _require_lie(L: HomAlgebra, op: str) -> None:
    if L.flavor != "lie":
        raise PreconditionFailed(f"{op} needs a Lie-flavored algebra, got {L.flavor!r}")


# --------------------------------------------------------------------------
# constructions
# --------------------------------------------------------------------------


def _transform_table(L: HomAlgebra, m: Matrix):
    return [[m @ L.structure[i][j] for j in range(L.dim)] for i in range(L.dim)]


def yau_twist(L: HomAlgebra, phi: Matrix) -> HomAlgebra:
    """(L, phi o [.,.], phi) for a Lie algebra L and an endomorphism phi."""
    _require_lie(L, "yau_twist")
    if not L.twist.is_identity():
        raise PreconditionFailed("yau_twist expects an ordinary Lie algebra (identity twist)")
    jac = check_hom_lie(L)
    if not jac:
        raise PreconditionFailed("input fails the Jacobi identity", witness=jac.witness)
    hom = _check_bracket_hom(phi, L)
    if not hom:
        raise NotAHomomorphism("phi does not preserve the bracket", witness=hom.witness)
    return HomAlgebra(L.dim, _transform_table(L, phi), phi, "lie", L.names)


def _check_bracket_hom(phi: Matrix, L: HomAlgebra) -> Verdict:
    cols = phi.columns()
    for i in range(L.dim):
        for j in range(L.dim):
            lhs = phi @ L.structure[i][j]
            rhs = L.product(cols[i], cols[j])
            if lhs != rhs:
                return Verdict(False, "bracket-hom", (i, j), sub_vectors(lhs, rhs))
    return Verdict(True, "bracket-hom")


def untwist(L: HomAlgebra) -> HomAlgebra:
    """(L, a^-1 [.,.]) with identity twist, for multiplicative nondegenerate L."""
    _require_lie(L, "untwist")
    if not check_nondegenerate(L):
        raise DegenerateTwist("twist is not invertible")
    mult = check_multiplicative(L)
    if not mult:
        raise PreconditionFailed("untwist needs a multiplicative algebra", witness=mult.witness)
    inv = inverse(L.twist)
    return HomAlgebra(L.dim, _transform_table(L, inv), Matrix.identity(L.dim), "lie", L.names)


@dataclass(frozen=True)
class CurrentAlgebra:
    """L (x) tQ[t]/(t^n); basis e_i (x) t^p sits at index i*(n-1) + (p-1)."""

    algebra: HomAlgebra
    base: HomAlgebra
    n: int

    def index(self, i: int, p: int) -> int:
        return i * (self.n - 1) + (p - 1)

    def embed(self, v: Sequence, p: int) -> Vector:
        """v (x) t^p."""
        out = [ZERO] * self.algebra.dim
        if 1 <= p < self.n:
            for i, x in enumerate(v):
                if x:
                    out[self.index(i, p)] = x
        return tuple(out)


def current_algebra(L: HomAlgebra, n: int) -> CurrentAlgebra:
    if n < 2:
        raise PreconditionFailed("current algebra needs n >= 2")
    d = L.dim
    m = n - 1
    D = d * m
    table = [[zero_vector(D) for _ in range(D)] for _ in range(D)]
    for i, j, nz in L.sparse_table():
        for p in range(1, n):
            for q in range(1, n - p):
                v = [ZERO] * D
                for k, x in nz:
                    v[k * m + p + q - 1] = x
                table[i * m + p - 1][j * m + q - 1] = tuple(v)
    tw = [[ZERO] * D for _ in range(D)]
    for r in range(d):
        for c in range(d):
            a = L.twist[r, c]
            if a:
                for p in range(m):
                    tw[r * m + p][c * m + p] = a
    names = [f"{L.names[i]}t{p}" for i in range(d) for p in range(1, n)]
    alg = HomAlgebra(D, table, Matrix(D, D, tw), L.flavor, names)
    return CurrentAlgebra(alg, L, n)


def center(L: HomAlgebra) -> Subspace:
    """{z : [z, L] = 0}."""
    _require_lie(L, "center")
    d = L.dim
    # rows: for each j and output k, sum_i z_i c[i][j][k] = 0
    rows = [[L.structure[i][j][k] for i in range(d)] for j in range(d) for k in range(d)]
    if not rows:
        return Subspace.full(d)
    return kernel(Matrix(len(rows), d, rows))


def product_span(A: HomAlgebra, U: Subspace, V: Subspace) -> Subspace:
    """span{u*v : u in U, v in V}."""
    return Subspace(A.dim, [A.product(u, v) for u in U.basis for v in V.basis])


def lower_central_series(L: HomAlgebra) -> list[Subspace]:
    """L^1 = L, L^{k+1} = [L^k, L], until zero or stable."""
    _require_lie(L, "lower_central_series")
    full = Subspace.full(L.dim)
    series = [full]
    while not series[-1].is_zero():
        nxt = product_span(L, series[-1], full)
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def nilindex(L: HomAlgebra) -> int | None:
    """Least n with L^n = 0, or None when the series stalls."""
    series = lower_central_series(L)
    return len(series) if series[-1].is_zero() else None


def is_nilpotent(L: HomAlgebra) -> bool:
    return nilindex(L) is not None


def hom_closure(L: HomAlgebra, seed: Subspace, mode: str = "ideal") -> Subspace:
    """Least subspace containing seed and closed under the twist and products."""
    if mode not in ("ideal", "subalgebra"):
        raise ValueError(f"mode must be 'ideal' or 'subalgebra', got {mode!r}")
    full = Subspace.full(L.dim)
    cur = seed
    while True:
        gens = list(cur.basis)
        gens += [L.alpha(v) for v in cur.basis]
        if mode == "ideal":
            gens += [L.product(u, v) for u in full.basis for v in cur.basis]
            gens += [L.product(v, u) for u in full.basis for v in cur.basis]
        else:
            gens += [L.product(u, v) for u in cur.basis for v in cur.basis]
        nxt = Subspace(L.dim, gens)
        if nxt == cur:
            return cur
        cur = nxt


def is_ideal(L: HomAlgebra, I: Subspace) -> bool:
    return hom_closure(L, I, "ideal") == I


def is_subalgebra(L: HomAlgebra, S: Subspace) -> bool:
    return hom_closure(L, S, "subalgebra") == S


@dataclass(frozen=True)
class QuotientAlgebra:
    """L/I on the pivot complement of I, with projection and section matrices."""

    algebra: HomAlgebra
    ideal: Subspace
    projection: Matrix  # dim(L/I) x dim(L)
    section: Matrix  # dim(L) x dim(L/I)


def quotient_algebra(L: HomAlgebra, I: Subspace) -> QuotientAlgebra:
    if not is_ideal(L, I):
        raise NotAnIdeal("subspace is not a Hom-ideal")
    comp = I.complement_indices()
    q = len(comp)
    d = L.dim

    def proj(v):
        r = I.reduce(v)
        return tuple(r[c] for c in comp)

    table = [[proj(L.product(unit_vector(d, a), unit_vector(d, b))) for b in comp] for a in comp]
    tw_cols = [proj(L.alpha(unit_vector(d, a))) for a in comp]
    twist = Matrix.from_columns(tw_cols, q) if q else Matrix.zeros(0, 0)
    names = [L.names[c] for c in comp]
    Q = HomAlgebra(q, table, twist, L.flavor, names)
    P = Matrix.from_columns([proj(unit_vector(d, j)) for j in range(d)], q) if d else Matrix.zeros(q, 0)
    S = Matrix.from_columns([unit_vector(d, c) for c in comp], d) if q else Matrix.zeros(d, 0)
    hom = check_homomorphism(P, L, Q)
    if not hom:  # pragma: no cover - guaranteed by the ideal check
        raise NotAnIdeal("projection failed to be a homomorphism", witness=hom.witness)
    return QuotientAlgebra(Q, I, P, S)


# --------------------------------------------------------------------------
# strong nilpotency
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class IdealChain:
    """Descending chain I_1 = L > I_2 > ... > I_n = 0."""

    algebra: HomAlgebra
    links: tuple[Subspace, ...]
    eigenvalues: tuple[Fraction, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.links)


def check_ideal_chain(chain: IdealChain, top: Subspace | None = None) -> Verdict:
    """Validate the chain: endpoints, ideals, codimension one, [L, I_i] in I_{i+1}.

    ``top`` replaces the whole space as the required first member, which lets
    the same predicate validate refinements of a given ideal.
    """
    L = chain.algebra
    links = chain.links
    full = Subspace.full(L.dim)
    top = full if top is None else top
    if not links or links[0] != top:
        return Verdict(False, "chain-top")
    if not links[-1].is_zero():
        return Verdict(False, "chain-bottom")
    for idx, I in enumerate(links):
        if not is_ideal(L, I):
            return Verdict(False, "ideal", (idx,))
    for idx in range(len(links) - 1):
        a, b = links[idx], links[idx + 1]
        if not a.contains_subspace(b) or a.dim - b.dim != 1:
            return Verdict(False, "codimension", (idx,))
        if not b.contains_subspace(product_span(L, full, a)):
            return Verdict(False, "central-step", (idx,))
    return Verdict(True, "ideal-chain")


def _eigen_key(lam: Fraction) -> tuple[int, int]:
    return (lam.numerator, lam.denominator)


def stable_hyperplane(L: HomAlgebra, I: Subspace, A: Subspace) -> tuple[Subspace, Fraction]:
    """Twist-stable J with A <= J < I and dim I/J = 1.

    Uses a rational eigenvector of the transposed induced twist on I/A; its
    kernel is the hyperplane.
    """
    q = QuotientMap(I, A)
    T = q.induced_matrix(L.twist)
    pairs = rational_eigenvectors(T.T)
    if not pairs:
        raise FieldExtensionNeeded(
            "induced twist on a quotient has no rational eigenvalue", witness=T)
    lam, functional = min(pairs, key=lambda p: _eigen_key(p[0]))
    # vectors of the complement killed by the functional, plus A
    keep = []
    if q.dim:
        ker = kernel(Matrix(1, q.dim, [functional]))
        keep = [q.lift(c) for c in ker.basis]
    return A.extend(keep), lam


def refine_ideal(L: HomAlgebra, I: Subspace) -> IdealChain:
    """Codimension-one chain from the ideal I down to 0, each step central in L."""
    if not is_ideal(L, I):
        raise NotAnIdeal("refine_ideal needs an ideal")
    full = Subspace.full(L.dim)
    links = [I]
    lams = []
    cur = I
    while not cur.is_zero():
        below = product_span(L, full, cur)
        if below == cur:
            raise NotNilpotent("[L, I] = I for a nonzero ideal I")
        nxt, lam = stable_hyperplane(L, cur, below)
        links.append(nxt)
        lams.append(lam)
        cur = nxt
    return IdealChain(L, tuple(links), tuple(lams))


def strong_nilpotency_chain(L: HomAlgebra) -> IdealChain:
    _require_lie(L, "strong_nilpotency_chain")
    mult = check_multiplicative(L)
    if not mult:
        raise PreconditionFailed("strong nilpotency chain needs a multiplicative algebra",
                                 witness=mult.witness)
    if not is_nilpotent(L):
        raise NotNilpotent("lower central series does not reach zero")
    return refine_ideal(L, Subspace.full(L.dim))


def twist_eigenvalue_on(L: HomAlgebra, z: Sequence, modulo: Subspace | None = None) -> Fraction | None:
    """lambda with a(z) = lambda z (mod ``modulo``), or None."""
    modulo = Subspace.zero(L.dim) if modulo is None else modulo
    az = modulo.reduce(L.alpha(z))
    zr = modulo.reduce(z)
    if is_zero_vector(zr):
        raise ValueError("z lies in the subspace it is taken modulo")
    k = next(i for i, x in enumerate(zr) if x)
    lam = az[k] / zr[k]
    if az != scale_vector(lam, zr):
        return None
    return lam


def complement_vector(big: Subspace, small: Subspace) -> Vector:
    comp = relative_complement(big, small)
    if len(comp) != 1:
        raise ValueError("expected codimension one")
    return comp[0]

