"""Hom-associative algebras, their representations, and the passage between
faithful representations and embeddings into Hom-associative algebras.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import DegenerateTwist, PreconditionFailed, SingularMatrix
from .exactla import ZERO, ONE, Matrix, Subspace, inverse, kernel, rank, unit_vector, zero_vector
from .homcore import (
    HomAlgebra,
    Verdict,
    check_multiplicative,
    check_nondegenerate,
)
from .homrep import (
    HomRepresentation,
    action_matrix,
    check_rep,
    check_rep_multiplicative,
    check_rep_nondegenerate,
    rep_kernel,
)


def check_hom_associative(A: HomAlgebra) -> Verdict:
    """(xy) a(z) = a(x) (yz) on all basis triples."""
    tw = A.twist.columns()
    for i in range(A.dim):
        for j in range(A.dim):
            xy = A.structure[i][j]
            for k in range(A.dim):
                lhs = A.product(xy, tw[k])
                rhs = A.product(tw[i], A.structure[j][k])
                if lhs != rhs:
                    return Verdict(False, "hom-associativity", (i, j, k),
                                   tuple(a - b for a, b in zip(lhs, rhs)))
    return Verdict(True, "hom-associativity")


def commutator_algebra(A: HomAlgebra) -> HomAlgebra:
    """A^(-): same twist, bracket xy - yx."""
    d = A.dim
    table = [[tuple(a - b for a, b in zip(A.structure[i][j], A.structure[j][i]))
              for j in range(d)] for i in range(d)]
    return HomAlgebra(d, table, A.twist, "lie", A.names)


def _require_regular_assoc(A: HomAlgebra, what: str) -> None:
    for check in (check_multiplicative, check_nondegenerate, check_hom_associative):
        v = check(A)
        if not v:
            raise PreconditionFailed(f"{what}: {v.law} fails", witness=v.witness)


def adjoin_unit(A: HomAlgebra, check: bool = True) -> HomAlgebra:
    """A + Q u with x u = u x = a(x) and a(u) = u; u is the last basis element."""
    if check:
        _require_regular_assoc(A, "adjoin_unit")
    d = A.dim
    n = d + 1
    table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
    for i in range(d):
        for j in range(d):
            table[i][j] = A.structure[i][j] + (ZERO,)
        ax = A.twist.column(i) + (ZERO,)
        table[i][d] = ax
        table[d][i] = ax
    table[d][d] = unit_vector(n, d)
    tw = [list(r) + [ZERO] for r in A.twist.data] + [[ZERO] * d + [ONE]]
    names = list(A.names) + ["u"]
    return HomAlgebra(n, table, Matrix(n, n, tw), A.flavor, names)


class EndomorphismAlgebra:
    """End(V) with x.y = b x b^-1 y b^-1 and twist Ad_b(x) = b x b^-1.

    The matrix unit E_ab is basis element a*m + b.  The structure tensor is
    built on first access to :attr:`algebra`; the matrix-level helpers avoid
    it entirely.
    """

    def __init__(self, beta: Matrix):
        try:
            self.beta_inv = inverse(beta)
        except SingularMatrix:
            raise DegenerateTwist("beta is not invertible") from None
        self.beta = beta
        self.m = beta.rows

    def product(self, x: Matrix, y: Matrix) -> Matrix:
        b, bi = self.beta, self.beta_inv
        return b @ x @ bi @ y @ bi

    def ad(self, x: Matrix) -> Matrix:
        return self.beta @ x @ self.beta_inv

    def bracket(self, x: Matrix, y: Matrix) -> Matrix:
        return self.product(x, y) - self.product(y, x)

    def vec(self, x: Matrix) -> tuple:
        return x.flat()

    def unvec(self, v) -> Matrix:
        return Matrix.from_flat(self.m, self.m, v)

    @cached_property
    def algebra(self) -> HomAlgebra:
        m = self.m
        n = m * m
        b, bi = self.beta, self.beta_inv
        # E_ab . E_cd = bi[b][c] * (column a of beta) (row d of beta^-1)
        bcols = [b.column(a) for a in range(m)]
        birows = [bi.row(d) for d in range(m)]
        table = [[None] * n for _ in range(n)]
        for a in range(m):
            ua = bcols[a]
            for bb in range(m):
                for c in range(m):
                    coef = bi[bb, c]
                    for d in range(m):
                        out = [ZERO] * n
                        if coef:
                            rd = birows[d]
                            for i, x in enumerate(ua):
                                if x:
                                    cx = coef * x
                                    for j, y in enumerate(rd):
                                        if y:
                                            out[i * m + j] = cx * y
                        table[a * m + bb][c * m + d] = tuple(out)
        tw_cols = [self.ad(Matrix.unit(m, m, a, bb)).flat() for a in range(m) for bb in range(m)]
        names = [f"E{a + 1}_{bb + 1}" for a in range(m) for bb in range(m)]
        return HomAlgebra(n, table, Matrix.from_columns(tw_cols, n), "associative", names)


def endomorphism_hom_algebra(beta: Matrix, check: bool = True) -> HomAlgebra:
    """The Hom-associative algebra (End(V), b x b^-1 y b^-1, Ad_b).

    ``check`` runs the brute-force multiplicativity and Hom-associativity
    checks, which cost O(m^9) and are only practical for small m.
    """
    A = EndomorphismAlgebra(beta).algebra
    if check:
        _require_regular_assoc(A, "endomorphism_hom_algebra")
    return A


# --------------------------------------------------------------------------
# representations of Hom-associative algebras
# --------------------------------------------------------------------------


def check_left_rep(A: HomAlgebra, rho: HomRepresentation) -> Verdict:
    """rho(xy) beta = rho(a x) rho(y)."""
    beta = rho.beta
    tw = A.twist.columns()
    for i in range(A.dim):
        ra = rho.act(tw[i])
        for j in range(A.dim):
            lhs = rho.act(A.structure[i][j]) @ beta
            rhs = ra @ rho.actions[j]
            if lhs != rhs:
                return Verdict(False, "left-representation", (i, j), lhs - rhs)
    return Verdict(True, "left-representation")


def check_right_rep(A: HomAlgebra, rho: HomRepresentation) -> Verdict:
    """v (xy) is twisted like a right module: rho(xy) beta = rho(a y) rho(x).

    Right operators compose in diagrammatic order, so the law
    ``beta . rho(xy) = rho(x) . rho(a y)`` becomes this product of column-acting
    matrices.  Right multiplication on A satisfies it by Hom-associativity.
    """
    beta = rho.beta
    tw = A.twist.columns()
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = rho.act(A.structure[i][j]) @ beta
            rhs = rho.act(tw[j]) @ rho.actions[i]
            if lhs != rhs:
                return Verdict(False, "right-representation", (i, j), lhs - rhs)
    return Verdict(True, "right-representation")


def check_compatibility(A: HomAlgebra, left: HomRepresentation, right: HomRepresentation) -> Verdict:
    """(a x)(v y) = (x v)(a y): left(a x) right(y) = right(a y) left(x)."""
    tw = A.twist.columns()
    for i in range(A.dim):
        la = left.act(tw[i])
        for j in range(A.dim):
            lhs = la @ right.actions[j]
            rhs = right.act(tw[j]) @ left.actions[i]
            if lhs != rhs:
                return Verdict(False, "birep-compatibility", (i, j), lhs - rhs)
    return Verdict(True, "birep-compatibility")


def check_assoc_rep_multiplicative(A: HomAlgebra, rho: HomRepresentation) -> Verdict:
    """rho(a x) beta = beta rho(x); same form for left and right."""
    beta = rho.beta
    for i, col in enumerate(A.twist.columns()):
        lhs = rho.act(col) @ beta
        rhs = beta @ rho.actions[i]
        if lhs != rhs:
            return Verdict(False, f"{rho.orientation}-rep-multiplicativity", (i,), lhs - rhs)
    return Verdict(True, f"{rho.orientation}-rep-multiplicativity")


def check_birep(A: HomAlgebra, left: HomRepresentation, right: HomRepresentation,
                multiplicative: bool = False) -> Verdict:
    checks = [check_left_rep(A, left), check_right_rep(A, right), check_compatibility(A, left, right)]
    if multiplicative:
        checks += [check_assoc_rep_multiplicative(A, left), check_assoc_rep_multiplicative(A, right)]
    for v in checks:
        if not v:
            return v
    return Verdict(True, "birepresentation")


def left_regular_rep(A: HomAlgebra) -> HomRepresentation:
    actions = tuple(A.left_mult_matrix(unit_vector(A.dim, i)) for i in range(A.dim))
    return HomRepresentation(A, A.dim, actions, A.twist, "left")


def right_regular_rep(A: HomAlgebra) -> HomRepresentation:
    actions = tuple(A.right_mult_matrix(unit_vector(A.dim, i)) for i in range(A.dim))
    return HomRepresentation(A, A.dim, actions, A.twist, "right")


def left_annihilator(A: HomAlgebra) -> Subspace:
    """{x : xA = 0}."""
    return rep_kernel(left_regular_rep(A))


def faithful_assoc_rep(A: HomAlgebra, check: bool = True) -> HomRepresentation:
    """Left action of A on A with a Hom-unit adjoined; module dimension dim(A) + 1."""
    Ahat = adjoin_unit(A, check=check)
    d = A.dim
    actions = tuple(Ahat.left_mult_matrix(unit_vector(d + 1, i)) for i in range(d))
    rho = HomRepresentation(A, d + 1, actions, Ahat.twist, "left")
    if not rep_kernel(rho).is_zero():  # pragma: no cover - forced by the unit
        raise PreconditionFailed("unit construction did not give a faithful action")
    return rho


# --------------------------------------------------------------------------
# faithful representations <-> embeddings
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """Injective homomorphism source -> target given by ``matrix``."""

    source: HomAlgebra
    matrix: Matrix
    endomorphisms: EndomorphismAlgebra | None = None
    target_algebra: HomAlgebra | None = None

    @property
    def target(self) -> HomAlgebra:
        if self.target_algebra is not None:
            return self.target_algebra
        return commutator_algebra(self.endomorphisms.algebra)


def theorem_a_forward(L: HomAlgebra, rho: HomRepresentation) -> Embedding:
    """Verify x -> rho(x) embeds L into (End(V)^(-), Ad_beta).

    Checks injectivity, rho([x,y]) = [rho x, rho y] for the twisted product
    of End(V), and rho(a x) = Ad_beta(rho x).  Works on matrices directly, so
    the End(V) structure tensor is never materialised here.
    """
    if rho.algebra != L:
        raise PreconditionFailed("representation is not of the given algebra")
    try:
        E = EndomorphismAlgebra(rho.beta)
    except DegenerateTwist:
        raise PreconditionFailed("module twist is singular") from None
    if not rep_kernel(rho).is_zero():
        raise PreconditionFailed("representation is not faithful", witness=rep_kernel(rho))
    acts = rho.actions
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = rho.act(L.structure[i][j])
            rhs = E.bracket(acts[i], acts[j])
            if lhs != rhs:
                raise PreconditionFailed("bracket is not preserved", witness=(i, j))
    for i, col in enumerate(L.twist.columns()):
        if rho.act(col) != E.ad(acts[i]):
            raise PreconditionFailed("twist is not intertwined with Ad_beta", witness=(i,))
    return Embedding(L, action_matrix(rho), E)


def theorem_a_backward(A: HomAlgebra, iota: Matrix, L: HomAlgebra,
                       check_algebra: bool = True) -> HomRepresentation:
    """Representation of L from an embedding iota: L -> A^(-).

    Composes iota with the unit-adjoined left action of A.  ``check_algebra``
    controls the brute-force checks on A itself (Hom-associativity is cubic
    in dim A); the embedding and the output are always checked.
    """
    if check_algebra:
        _require_regular_assoc(A, "theorem_a_backward")
    hom = _check_commutator_hom(iota, L, A)
    if not hom:
        raise PreconditionFailed(f"iota is not a homomorphism ({hom.law})", witness=hom.witness)
    if L.dim and rank(iota) != L.dim:
        raise PreconditionFailed("iota is not injective", witness=kernel(iota))
    # left action of A + Q u restricted to iota(L), without building A + Q u
    d = A.dim
    actions = []
    for j in range(L.dim):
        u = iota.column(j)
        left = A.left_mult_matrix(u)
        au = A.twist @ u
        rows = [list(left.row(r)) + [au[r]] for r in range(d)] + [[ZERO] * (d + 1)]
        actions.append(Matrix(d + 1, d + 1, rows))
    beta = Matrix(d + 1, d + 1, [list(r) + [ZERO] for r in A.twist.data] + [[ZERO] * d + [ONE]])
    rho = HomRepresentation(L, d + 1, tuple(actions), beta, "left")
    for v in (check_rep(rho), check_rep_multiplicative(rho), check_rep_nondegenerate(rho)):
        if not v:
            raise PreconditionFailed(f"composed map fails {v.law}", witness=v.witness)
    if not rep_kernel(rho).is_zero():
        raise PreconditionFailed("composed representation is not faithful")
    return rho


def _check_commutator_hom(iota: Matrix, L: HomAlgebra, A: HomAlgebra) -> Verdict:
    """iota([x,y]) = iota(x)iota(y) - iota(y)iota(x) and iota a_L = a_A iota."""
    if iota.shape != (A.dim, L.dim):
        return Verdict(False, "shape", (iota.shape,))
    cols = iota.columns()
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = iota @ L.structure[i][j]
            p, q = A.product(cols[i], cols[j]), A.product(cols[j], cols[i])
            if lhs != tuple(a - b for a, b in zip(p, q)):
                return Verdict(False, "bracket", (i, j))
    if iota @ L.twist != A.twist @ iota:
        return Verdict(False, "twist")
    return Verdict(True, "homomorphism")


def embedding_from_rep(rho: HomRepresentation) -> tuple[HomAlgebra, Matrix]:
    """(End(V) algebra, iota matrix) for feeding theorem_a_forward into theorem_a_backward."""
    E = EndomorphismAlgebra(rho.beta)
    return E.algebra, action_matrix(rho)
