"""Faithful nilpotent representations of nilpotent Hom-Lie algebras.

Two routes are available.

graded
    An N-graded algebra embeds into the current algebra L (x) tQ[t]/(t^n)
    by x -> x (x) t^deg(x).  The map x (x) t^q -> q a(x) (x) t^q is an
    a-derivation of the current algebra, and the current algebra acts
    faithfully on itself plus the derivation line.

general
    Present L as M/I with M free nilpotent multiplicative, refine I into a
    chain of ideals with one-dimensional central steps, and walk down the
    chain.  At each step, a representation of M whose kernel is the lower
    ideal is cut down to the kernel of the central element and assembled
    into one whose kernel is the upper ideal.

Every certificate has its verdicts recomputed from the final matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegenerateTwist,
    FieldExtensionNeeded,
    InvalidGrading,
    NotADerivation,
    NotInvariant,
    NotNilpotent,
    PreconditionFailed,
    SearchExhausted,
)
from .exactla import (
    ONE,
    ZERO,
    Matrix,
    SparseMatrix,
    Subspace,
    Vector,
    inverse,
    is_zero_vector,
    kernel,
    lincomb,
    relative_complement,
    restricted_matrix,
    solve,
    tensor_matrix,
    unit_vector,
)
from .homcore import (
    HomAlgebra,
    QuotientAlgebra,
    Verdict,
    check_hom_lie,
    check_multiplicative,
    check_nondegenerate,
    complement_vector,
    current_algebra,
    is_nilpotent,
    lower_central_series,
    refine_ideal,
    twist_eigenvalue_on,
)
from .homrep import (
    HomRepresentation,
    check_rep,
    check_rep_multiplicative,
    check_rep_nondegenerate,
    direct_sum_all,
    pull_back,
    rep_kernel,
    rep_nilindex,
    restrict_to_submodule,
)

DEFAULT_TENSOR_BOUND = 4
# tensor powers past this module dimension are not attempted
DEFAULT_MAX_MODULE_DIM = 20000


# --------------------------------------------------------------------------
# derivations
# --------------------------------------------------------------------------


def check_alpha_derivation(L: HomAlgebra, D: Matrix) -> Verdict:
    """D[x,y] = [Dx, ay] + [ax, Dy] on basis pairs, plus Da = aD when L is multiplicative."""
    d = L.dim
    if D.shape != (d, d):
        raise ValueError(f"derivation must be {d}x{d}")
    dcols = D.columns()
    acols = L.twist.columns()
    for i in range(d):
        for j in range(i, d):
            lhs = D @ L.structure[i][j]
            rhs = [a + b for a, b in zip(L.product(dcols[i], acols[j]), L.product(acols[i], dcols[j]))]
            if tuple(lhs) != tuple(rhs):
                return Verdict(False, "alpha-derivation", (i, j),
                               tuple(a - b for a, b in zip(lhs, rhs)))
    if check_multiplicative(L):
        comm = D @ L.twist - L.twist @ D
        if not comm.is_zero():
            return Verdict(False, "derivation-commutes", None, comm)
    return Verdict(True, "alpha-derivation")


def extend_by_derivation(L: HomAlgebra, D: Matrix) -> tuple[HomAlgebra, HomRepresentation]:
    """L + QD with [D, x] = D(x), a(D) = D, and L acting on it by brackets.

    rho(x)(y + cD) = [x, y] - c D(x) with module twist a + 1.
    """
    v = check_alpha_derivation(L, D)
    if not v:
        raise NotADerivation(f"map fails the {v.law} law", witness=v.witness)
    d = L.dim
    n = d + 1
    table = [[(ZERO,) * n for _ in range(n)] for _ in range(n)]
    for i in range(d):
        for j in range(d):
            table[i][j] = tuple(L.structure[i][j]) + (ZERO,)
        dx = D.column(i) + (ZERO,)
        table[d][i] = dx
        table[i][d] = tuple(-x for x in dx)
    tw_rows = [list(L.twist.row(r)) + [ZERO] for r in range(d)] + [[ZERO] * d + [ONE]]
    twist = Matrix(n, n, tw_rows)
    ambient = HomAlgebra(n, table, twist, "lie", list(L.names) + ["D"])
    actions = []
    for i in range(d):
        ad = L.left_mult_matrix(unit_vector(d, i))
        rows = [list(ad.row(r)) + [-D[r, i]] for r in range(d)] + [[ZERO] * n]
        actions.append(Matrix(n, n, rows))
    rho = HomRepresentation(L, n, tuple(actions), twist)
    return ambient, rho


def euler_derivation(C) -> Matrix:
    """x (x) t^q -> q a(x) (x) t^q on a current algebra."""
    L, n = C.base, C.n
    N = C.algebra.dim
    rows = [[ZERO] * N for _ in range(N)]
    for r in range(L.dim):
        for c in range(L.dim):
            a = L.twist[r, c]
            if a:
                for q in range(1, n):
                    rows[C.index(r, q)][C.index(c, q)] = q * a
    return Matrix(N, N, rows)


# --------------------------------------------------------------------------
# gradings
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Grading:
    """Degrees of a homogeneous basis; columns of ``basis`` are the basis vectors."""

    degrees: tuple[int, ...]
    basis: Matrix

    @classmethod
    def standard(cls, degrees: Sequence[int]) -> "Grading":
        return cls(tuple(degrees), Matrix.identity(len(degrees)))

    @property
    def top(self) -> int:
        return max(self.degrees, default=0)

    def component(self, d: int) -> Subspace:
        cols = [self.basis.column(i) for i, e in enumerate(self.degrees) if e == d]
        return Subspace(self.basis.rows, cols)

    def components(self, v: Sequence) -> dict[int, Vector]:
        """Split v into homogeneous parts."""
        coords = inverse(self.basis) @ tuple(v)
        parts: dict[int, list] = {}
        for i, c in enumerate(coords):
            if c:
                e = self.degrees[i]
                acc = parts.setdefault(e, [ZERO] * self.basis.rows)
                col = self.basis.column(i)
                for r, x in enumerate(col):
                    if x:
                        acc[r] += c * x
        return {e: tuple(p) for e, p in parts.items()}


def _as_grading(L: HomAlgebra, grading) -> Grading:
    if isinstance(grading, Grading):
        return grading
    return Grading.standard(tuple(grading))


def validate_grading(L: HomAlgebra, grading) -> Grading:
    g = _as_grading(L, grading)
    if len(g.degrees) != L.dim or g.basis.shape != (L.dim, L.dim):
        raise InvalidGrading("grading does not match the algebra dimension")
    if any(e < 1 for e in g.degrees):
        raise InvalidGrading("degrees must be positive")
    if L.dim and g.basis.rows and not _invertible(g.basis):
        raise InvalidGrading("graded basis is not a basis")
    comps = {e: g.component(e) for e in set(g.degrees)}
    for e, C in comps.items():
        for v in C.basis:
            if not C.contains(L.alpha(v)):
                raise InvalidGrading(f"twist does not preserve degree {e}", witness=v)
    for i, a in enumerate(g.degrees):
        for j, b in enumerate(g.degrees):
            if j < i:
                continue
            w = L.product(g.basis.column(i), g.basis.column(j))
            if is_zero_vector(w):
                continue
            target = comps.get(a + b)
            if target is None or not target.contains(w):
                raise InvalidGrading(f"bracket of degrees {a} and {b} leaves degree {a + b}",
                                     witness=(i, j))
    return g


def _invertible(m: Matrix) -> bool:
    return Subspace(m.rows, m.columns()).dim == m.rows


def find_grading(L: HomAlgebra) -> Grading | None:
    """Grading from twist-stable complements along the lower central series.

    Returns None when no such complement exists or the complements do not
    multiply additively.
    """
    if L.dim == 0:
        return Grading((), Matrix.zeros(0))
    if not check_multiplicative(L):
        return None
    series = lower_central_series(L)
    if not series[-1].is_zero():
        return None
    degrees: list[int] = []
    vectors: list[Vector] = []
    for d in range(len(series) - 1):
        big, small = series[d], series[d + 1]
        comp = _stable_complement(L, big, small)
        if comp is None:
            return None
        vectors += comp
        degrees += [d + 1] * len(comp)
    g = Grading(tuple(degrees), Matrix.from_columns(vectors, L.dim))
    try:
        return validate_grading(L, g)
    except InvalidGrading:
        return None


def _stable_complement(L: HomAlgebra, big: Subspace, small: Subspace) -> list[Vector] | None:
    """Twist-stable complement of ``small`` in ``big``, via phi A - E phi = B."""
    C0 = relative_complement(big, small)
    r, m = len(C0), small.dim
    if m == 0 or r == 0:
        return C0
    cols = list(C0) + list(small.basis)
    G = Matrix.from_columns(cols, L.dim)
    A_cols, B_cols = [], []
    for c in C0:
        y = solve(G, L.alpha(c))
        if y is None:  # pragma: no cover - big is twist-stable
            return None
        A_cols.append(y[:r])
        B_cols.append(y[r:])
    A = Matrix.from_columns(A_cols, r)
    B = Matrix.from_columns(B_cols, m)
    E = restricted_matrix(L.twist, small)
    # row-major vec: vec(phi A) = (I_m (x) A^T) vec(phi), vec(E phi) = (E (x) I_r) vec(phi)
    op = tensor_matrix(Matrix.identity(m), A.T) - tensor_matrix(E, Matrix.identity(r))
    phi = solve(op, B.flat())
    if phi is None:
        return None
    phi = Matrix.from_flat(m, r, phi)
    out = []
    for j, c in enumerate(C0):
        shift = lincomb(phi.column(j), small.basis, L.dim)
        out.append(tuple(a + b for a, b in zip(c, shift)))
    return out


# --------------------------------------------------------------------------
# certificates
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AdoCertificate:
    representation: HomRepresentation
    faithful: bool
    nilindex: int | None
    multiplicative: bool
    nondegenerate: bool
    trace: tuple[str, ...] = field(default=())
    path: str = "graded"

    @property
    def nilpotent(self) -> bool:
        return self.nilindex is not None

    @property
    def valid(self) -> bool:
        return self.faithful and self.nilpotent and self.multiplicative and self.nondegenerate

    @property
    def module_dim(self) -> int:
        return self.representation.module_dim


def certify(rho: HomRepresentation, trace: Sequence[str] = (), path: str = "graded") -> AdoCertificate:
    """Certificate whose verdicts are computed from ``rho`` alone."""
    law = check_rep(rho)
    if not law:
        raise PreconditionFailed("assembled map is not a representation", witness=law.witness)
    return AdoCertificate(
        rho,
        rep_kernel(rho).is_zero(),
        rep_nilindex(rho),
        bool(check_rep_multiplicative(rho)),
        bool(check_rep_nondegenerate(rho)),
        tuple(trace),
        path,
    )


@dataclass(frozen=True)
class CertificateReport:
    laws: tuple[Verdict, ...]
    nilindex: int | None

    @property
    def ok(self) -> bool:
        return all(self.laws)

    def __bool__(self) -> bool:
        return self.ok

    def get(self, law: str) -> Verdict:
        return next(v for v in self.laws if v.law == law)


def verify_certificate(L: HomAlgebra, c: AdoCertificate | HomRepresentation) -> CertificateReport:
    """Recompute every certified law from the matrices; the trace is ignored."""
    rho = c.representation if isinstance(c, AdoCertificate) else c
    laws = []
    if rho.algebra != L:
        laws.append(Verdict(False, "base-algebra"))
    laws.append(check_rep(rho))
    ker = rep_kernel(rho)
    laws.append(Verdict(ker.is_zero(), "faithful", ker.basis[0] if ker.basis else None))
    ni = rep_nilindex(rho)
    laws.append(Verdict(ni is not None, "nilpotent", None, ni))
    laws.append(check_rep_multiplicative(rho))
    laws.append(check_rep_nondegenerate(rho))
    return CertificateReport(tuple(laws), ni)


# --------------------------------------------------------------------------
# graded path
# --------------------------------------------------------------------------


def graded_embedding(L: HomAlgebra, grading: Grading, C) -> Matrix:
    """Matrix of x -> sum_d x_d (x) t^d into the current algebra C."""
    cols = []
    for j in range(L.dim):
        out = [ZERO] * C.algebra.dim
        for d, part in grading.components(unit_vector(L.dim, j)).items():
            for k, x in enumerate(C.embed(part, d)):
                if x:
                    out[k] += x
        cols.append(tuple(out))
    return Matrix.from_columns(cols, C.algebra.dim) if cols else Matrix.zeros(C.algebra.dim, 0)


def graded_faithful_rep(L: HomAlgebra, grading) -> AdoCertificate:
    rho, trace = _graded_rep(L, grading)
    return certify(rho, trace, "graded")


def _graded_rep(L: HomAlgebra, grading) -> tuple[HomRepresentation, list[str]]:
    nd = check_nondegenerate(L)
    if not nd:
        raise DegenerateTwist("twist has a kernel", witness=nd.witness)
    g = validate_grading(L, grading)
    if L.dim == 0:
        raise PreconditionFailed("zero algebra")
    p = g.top
    C = current_algebra(L, p + 1)
    D = euler_derivation(C)
    _, rhoC = extend_by_derivation(C.algebra, D)
    E = graded_embedding(L, g, C)
    rho = pull_back(rhoC, E, L)
    trace = [
        f"grading degrees {list(g.degrees)} top {p}",
        f"current algebra n={p + 1} dim {C.algebra.dim}",
        f"derivation extension module dim {rhoC.module_dim}",
    ]
    return rho, trace


# --------------------------------------------------------------------------
# distinguishing representations
# --------------------------------------------------------------------------


def _central_eigen(Ltilde: HomAlgebra, z: Sequence, modulo: Subspace) -> Fraction:
    d = Ltilde.dim
    for i in range(d):
        if not modulo.contains(Ltilde.product(unit_vector(d, i), z)):
            raise PreconditionFailed("z is not central", witness=i)
    lam = twist_eigenvalue_on(Ltilde, z, modulo)
    if lam is None:
        raise PreconditionFailed("z does not span a twist-stable line")
    if lam == 0:
        raise PreconditionFailed("twist kills the central line")
    return lam


class _SparseRep:
    """Sparse copy of a representation, so tensor powers stay affordable."""

    def __init__(self, dim: int, actions: list[SparseMatrix], beta: SparseMatrix):
        self.dim = dim
        self.actions = actions
        self.beta = beta

    @classmethod
    def of(cls, rho: HomRepresentation) -> "_SparseRep":
        return cls(rho.module_dim, [SparseMatrix.from_matrix(a) for a in rho.actions],
                   SparseMatrix.from_matrix(rho.beta))

    def tensor(self, other: "_SparseRep") -> "_SparseRep":
        acts = [a.kron(other.beta) + self.beta.kron(b) for a, b in zip(self.actions, other.actions)]
        return _SparseRep(self.dim * other.dim, acts, self.beta.kron(other.beta))

    def act(self, x: Sequence) -> SparseMatrix:
        return SparseMatrix.combine(list(x), self.actions)

    def to_rep(self, L: HomAlgebra) -> HomRepresentation:
        return HomRepresentation(L, self.dim, tuple(a.to_matrix() for a in self.actions),
                                 self.beta.to_matrix())

    def cyclic_piece(self, L: HomAlgebra, w: dict) -> HomRepresentation:
        """Restriction to the submodule generated by w."""
        n = self.dim
        gens = self.actions + [self.beta]
        dense = lambda v: tuple(v.get(i, ZERO) for i in range(n))  # noqa: E731
        U = Subspace(n, [dense(w)])
        todo = [w]
        while todo:
            v = todo.pop()
            for g in gens:
                u = g.apply(v)
                if u and not U.contains(dense(u)):
                    U = U.extend([dense(u)])
                    todo.append(u)
        sparse_basis = [{i: x for i, x in enumerate(b) if x} for b in U.basis]

        def restricted(m: SparseMatrix) -> Matrix:
            cols = [U.coordinates(dense(m.apply(b))) for b in sparse_basis]
            return Matrix.from_columns(cols, U.dim)

        return HomRepresentation(L, U.dim, tuple(restricted(a) for a in self.actions),
                                 restricted(self.beta))


def _sparse_search(Ltilde: HomAlgebra, z: Sequence, x: Sequence, base: HomRepresentation,
                   bound: int, modulo: Subspace | None, max_module_dim: int
                   ) -> tuple[_SparseRep, int, dict]:
    """First tensor power of base, with a vector of Ker rho(z) that x moves."""
    modulo = Subspace.zero(Ltilde.dim) if modulo is None else modulo
    if modulo.contains(z) or modulo.extend([z]).contains(x):
        raise PreconditionFailed("x and z must be linearly independent")
    _central_eigen(Ltilde, z, modulo)
    one = _SparseRep.of(base)
    rho = None
    for power in range(1, bound + 1):
        if rho is None:
            rho = one
        else:
            if rho.dim * one.dim > max_module_dim:
                raise SearchExhausted(
                    f"tensor power {power} exceeds module dimension {max_module_dim}", bound)
            rho = rho.tensor(one)
        rx = rho.act(x)
        for w in rho.act(z).kernel_vectors():
            if rx.apply(w):
                return rho, power, w
    raise SearchExhausted(f"no tensor power up to {bound} separates the kernels", bound)


def distinguishing_search(Ltilde: HomAlgebra, z: Sequence, x: Sequence, base: HomRepresentation,
                          bound: int = DEFAULT_TENSOR_BOUND, modulo: Subspace | None = None,
                          max_module_dim: int = DEFAULT_MAX_MODULE_DIM
                          ) -> tuple[HomRepresentation, int]:
    """Like distinguishing_rep, also returning the tensor power that worked."""
    rho, power, _ = _sparse_search(Ltilde, z, x, base, bound, modulo, max_module_dim)
    return rho.to_rep(Ltilde), power


def distinguishing_rep(Ltilde: HomAlgebra, z: Sequence, x: Sequence, base: HomRepresentation,
                       bound: int = DEFAULT_TENSOR_BOUND, modulo: Subspace | None = None
                       ) -> HomRepresentation:
    """Tensor power of ``base`` with Ker rho(z) not inside Ker rho(x).

    Direct sums are not searched: the kernel condition holds for a direct
    sum exactly when it holds for one of the summands.  ``modulo`` names an
    ideal inside the kernel of ``base``; centrality and the eigenvector
    condition on z are then read modulo it.
    """
    return distinguishing_search(Ltilde, z, x, base, bound, modulo)[0]


def restrict_to_z_kernel(Ltilde: HomAlgebra, rho: HomRepresentation, z: Sequence,
                         quotient: QuotientAlgebra | None = None) -> HomRepresentation:
    """Restriction to W = Ker rho(z).

    With ``quotient`` (an algebra Ltilde/<z>), the action is pushed down to
    it through the quotient section; otherwise the result stays a
    representation of Ltilde whose kernel contains z.
    """
    W = kernel(rho.act(z))
    for i, a in enumerate(rho.actions):
        if not W.is_invariant(a):
            raise NotInvariant(f"Ker rho(z) is not stable under action {i}", witness=i)
    if not W.is_invariant(rho.beta):
        raise NotInvariant("Ker rho(z) is not stable under the module twist")
    tau = restrict_to_submodule(rho, W)
    if quotient is None:
        return tau
    Q = quotient.algebra
    actions = tuple(tau.act(quotient.section.column(i)) for i in range(Q.dim))
    return HomRepresentation(Q, tau.module_dim, actions, tau.beta, tau.orientation)


# --------------------------------------------------------------------------
# general path
# --------------------------------------------------------------------------


def _prune(pieces: list[HomRepresentation], target: Subspace) -> list[HomRepresentation]:
    """Drop summands not needed to keep the joint kernel equal to ``target``."""
    kernels = [rep_kernel(p) for p in pieces]
    keep = list(range(len(pieces)))
    for i in sorted(keep, key=lambda i: -pieces[i].module_dim):
        rest = [j for j in keep if j != i]
        if not rest:
            continue
        joint = kernels[rest[0]]
        for j in rest[1:]:
            joint = joint & kernels[j]
        if joint == target:
            keep = rest
    return [pieces[i] for i in keep]


def _descend(M: HomAlgebra, sigma: HomRepresentation, upper: Subspace, lower: Subspace,
             bound: int, trace: list[str],
             max_module_dim: int = DEFAULT_MAX_MODULE_DIM) -> HomRepresentation:
    """From a representation of M with kernel ``lower`` to one with kernel ``upper``."""
    z = complement_vector(upper, lower)
    lam = twist_eigenvalue_on(M, z, lower)
    if lam is None:  # pragma: no cover - links of a stable chain
        raise FieldExtensionNeeded("central line is not twist-stable")
    pieces: list[HomRepresentation] = []
    joint = Subspace.full(M.dim)
    while joint != upper:
        x = relative_complement(joint, upper)[0]
        rho, power, w = _sparse_search(M, z, x, sigma, bound, lower, max_module_dim)
        # the submodule generated by w sits inside Ker rho(z), and x moves w
        tau = rho.cyclic_piece(M, w)
        if not tau.act(z).is_zero():
            raise NotInvariant("Ker rho(z) is not a submodule")
        pieces.append(tau)
        joint = joint & rep_kernel(tau)
        trace.append(f"  separate direction via tensor power {power}: piece dim {tau.module_dim}")
    pieces = _prune(pieces, upper)
    out = direct_sum_all(pieces)
    trace.append(f"step to ideal dim {upper.dim}: lambda={lam}, {len(pieces)} summands, "
                 f"module dim {out.module_dim}")
    return out


def general_faithful_rep(L: HomAlgebra, tensor_bound: int = DEFAULT_TENSOR_BOUND) -> AdoCertificate:
    from .freehl import present_as_quotient

    q = present_as_quotient(L)
    P = q.free
    M = P.algebra
    trace = [f"present as M_(k={q.k}, n={q.n}, f={q.f}) of dim {M.dim}, ideal dim {q.kernel_ideal.dim}"]
    # the final certificate is recomputed from scratch, so the base is not
    sigma, _ = _graded_rep(M, Grading.standard(P.degrees))
    trace.append(f"free algebra graded rep module dim {sigma.module_dim}")
    chain = refine_ideal(M, q.kernel_ideal)
    trace.append(f"ideal chain dims {[I.dim for I in chain.links]}")
    links = chain.links
    for j in range(len(links) - 2, -1, -1):
        sigma = _descend(M, sigma, links[j], links[j + 1], tensor_bound, trace)
    # leaf x_i maps to e_i, so leaves give a section of the surjection
    section = [unit_vector(M.dim, P.leaf_index(i, 0)) for i in range(L.dim)]
    actions = tuple(sigma.act(s) for s in section)
    rho = HomRepresentation(L, sigma.module_dim, actions, sigma.beta)
    return certify(rho, trace, "general")


def _check_ado_input(L: HomAlgebra) -> None:
    if L.flavor != "lie":
        raise PreconditionFailed("ado needs a Hom-Lie algebra")
    for check in (check_hom_lie, check_multiplicative, check_nondegenerate):
        v = check(L)
        if not v:
            raise PreconditionFailed(f"algebra fails {v.law}", witness=v.witness)
    if not is_nilpotent(L):
        raise NotNilpotent("algebra is not nilpotent")


def ado(L: HomAlgebra, tensor_bound: int = DEFAULT_TENSOR_BOUND, path: str = "auto") -> AdoCertificate:
    """Faithful nilpotent multiplicative nondegenerate representation of L."""
    if path not in ("auto", "graded", "general"):
        raise ValueError(f"unknown path {path!r}")
    _check_ado_input(L)
    if path != "general":
        g = find_grading(L)
        if g is not None:
            return graded_faithful_rep(L, g)
        if path == "graded":
            raise PreconditionFailed("no compatible grading found")
    return general_faithful_rep(L, tensor_bound)


def subalgebra_structure(L: HomAlgebra, S: Subspace) -> tuple[HomAlgebra, Matrix]:
    """S as a Hom-algebra in its canonical basis, with the inclusion matrix."""
    table = [[S.coordinates(L.product(u, v)) for v in S.basis] for u in S.basis]
    twist = Matrix.from_columns([S.coordinates(L.alpha(u)) for u in S.basis], S.dim) \
        if S.dim else Matrix.zeros(0)
    alg = HomAlgebra(S.dim, table, twist, L.flavor)
    return alg, S.basis_matrix()


def restrict_to_subalgebra(rho: HomRepresentation, S: Subspace) -> HomRepresentation:
    sub, inc = subalgebra_structure(rho.algebra, S)
    return pull_back(rho, inc, sub)
