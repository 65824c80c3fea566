"""Representations of Hom-Lie algebras.

A representation stores one action matrix per basis element of the algebra
and the module twist.  The laws checked here are

    rho([x,y]) beta = rho(a x) rho(y) - rho(a y) rho(x)      (representation)
    rho(a x) beta   = beta rho(x)                             (multiplicative)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BaseMismatch, NotARepresentation, NotMultiplicative
from .exactla import (
    ZERO,
    Matrix,
    Subspace,
    block_diagonal,
    kernel,
    restricted_matrix,
    tensor_matrix,
    unit_vector,
)
from .homcore import HomAlgebra, Verdict, check_homomorphism

ORIENTATIONS = ("left", "right")


@dataclass(frozen=True)
class HomRepresentation:
    algebra: HomAlgebra
    module_dim: int
    actions: tuple[Matrix, ...]
    module_twist: Matrix
    orientation: str = "left"

    def __post_init__(self):
        if len(self.actions) != self.algebra.dim:
            raise ValueError(f"need {self.algebra.dim} action matrices, got {len(self.actions)}")
        shape = (self.module_dim, self.module_dim)
        if any(a.shape != shape for a in self.actions) or self.module_twist.shape != shape:
            raise ValueError(f"action and twist matrices must be {shape}")
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be one of {ORIENTATIONS}")

    @property
    def beta(self) -> Matrix:
        return self.module_twist

    def act(self, x: Sequence) -> Matrix:
        """rho(x) for a coordinate vector x."""
        m = self.module_dim
        out = [[ZERO] * m for _ in range(m)]
        for c, a in zip(x, self.actions):
            if not c:
                continue
            for i, row in enumerate(a.sparse_rows()):
                target = out[i]
                for j, v in row:
                    target[j] += c * v
        return Matrix(m, m, out)

    def with_actions(self, actions, module_twist=None) -> "HomRepresentation":
        return HomRepresentation(self.algebra, self.module_dim, tuple(actions),
                                 self.module_twist if module_twist is None else module_twist,
                                 self.orientation)


def zero_rep(L: HomAlgebra, module_dim: int, beta: Matrix | None = None) -> HomRepresentation:
    beta = Matrix.identity(module_dim) if beta is None else beta
    z = Matrix.zeros(module_dim)
    return HomRepresentation(L, module_dim, (z,) * L.dim, beta)


def check_rep(rho: HomRepresentation) -> Verdict:
    L = rho.algebra
    beta = rho.beta
    alpha_cols = L.twist.columns()
    ra = [rho.act(c) for c in alpha_cols]
    for i in range(L.dim):
        for j in range(i, L.dim):
            lhs = rho.act(L.structure[i][j]) @ beta
            rhs = ra[i] @ rho.actions[j] - ra[j] @ rho.actions[i]
            if lhs != rhs:
                return Verdict(False, "representation", (i, j), lhs - rhs)
    return Verdict(True, "representation")


def check_rep_multiplicative(rho: HomRepresentation) -> Verdict:
    L = rho.algebra
    beta = rho.beta
    for i, col in enumerate(L.twist.columns()):
        lhs = rho.act(col) @ beta
        rhs = beta @ rho.actions[i]
        if lhs != rhs:
            return Verdict(False, "rep-multiplicativity", (i,), lhs - rhs)
    return Verdict(True, "rep-multiplicativity")


def check_rep_nondegenerate(rho: HomRepresentation) -> Verdict:
    ker = kernel(rho.beta)
    if ker.is_zero():
        return Verdict(True, "rep-nondegeneracy")
    return Verdict(False, "rep-nondegeneracy", (ker.basis[0],), ker)


def adjoint_rep(L: HomAlgebra) -> HomRepresentation:
    actions = tuple(L.left_mult_matrix(unit_vector(L.dim, i)) for i in range(L.dim))
    return HomRepresentation(L, L.dim, actions, L.twist)


def semidirect_sum(L: HomAlgebra, rho: HomRepresentation) -> HomAlgebra:
    """L + V with [x, v] = rho(x) v, [V, V] = 0 and twist alpha + beta."""
    v = check_rep(rho)
    if not v:
        raise NotARepresentation("input fails the representation law", witness=v.witness)
    d, m = L.dim, rho.module_dim
    n = d + m
    table = [[(ZERO,) * n for _ in range(n)] for _ in range(n)]
    for i in range(d):
        for j in range(d):
            table[i][j] = L.structure[i][j] + (ZERO,) * m
        for k in range(m):
            col = rho.actions[i].column(k)
            out = (ZERO,) * d + col
            table[i][d + k] = out
            table[d + k][i] = tuple(-x for x in out)
    twist = block_diagonal([L.twist, rho.beta])
    names = list(L.names) + [f"v{k + 1}" for k in range(m)]
    return HomAlgebra(n, table, twist, "lie", names)


def _same_base(rho: HomRepresentation, tau: HomRepresentation) -> None:
    if rho.algebra != tau.algebra:
        raise BaseMismatch("representations of different algebras")


def direct_sum(rho: HomRepresentation, tau: HomRepresentation) -> HomRepresentation:
    _same_base(rho, tau)
    actions = tuple(block_diagonal([a, b]) for a, b in zip(rho.actions, tau.actions))
    return HomRepresentation(rho.algebra, rho.module_dim + tau.module_dim, actions,
                             block_diagonal([rho.beta, tau.beta]), rho.orientation)


def direct_sum_all(reps: Sequence[HomRepresentation]) -> HomRepresentation:
    reps = list(reps)
    if not reps:
        raise ValueError("empty direct sum")
    L = reps[0].algebra
    for r in reps[1:]:
        _same_base(reps[0], r)
    actions = tuple(block_diagonal([r.actions[i] for r in reps]) for i in range(L.dim))
    return HomRepresentation(L, sum(r.module_dim for r in reps), actions,
                             block_diagonal([r.beta for r in reps]))


def tensor_rep(rho: HomRepresentation, tau: HomRepresentation) -> HomRepresentation:
    """(rho (x) tau)(x) = rho(x) (x) gamma + beta (x) tau(x) on (V (x) W, beta (x) gamma)."""
    _same_base(rho, tau)
    for r, label in ((rho, "first"), (tau, "second")):
        v = check_rep_multiplicative(r)
        if not v:
            raise NotMultiplicative(f"{label} factor is not multiplicative", witness=v.witness)
    beta, gamma = rho.beta, tau.beta
    actions = tuple(tensor_matrix(a, gamma) + tensor_matrix(beta, b)
                    for a, b in zip(rho.actions, tau.actions))
    return HomRepresentation(rho.algebra, rho.module_dim * tau.module_dim, actions,
                             tensor_matrix(beta, gamma))


def rep_nilindex(rho: HomRepresentation) -> int | None:
    """Least n with every n-fold product of actions zero; None if never.

    Iterates V_k = span of k-fold products applied to V.  V_k = 0 exactly
    when all k-fold products vanish, and the chain is descending, so a
    repeated nonzero member means the representation is not nilpotent.
    """
    m = rho.module_dim
    cur = Subspace.full(m)
    k = 0
    while True:
        if cur.is_zero():
            return max(k, 1)
        nxt = Subspace(m, [a @ v for a in rho.actions for v in cur.basis])
        k += 1
        if nxt == cur:
            return None
        cur = nxt


def action_matrix(rho: HomRepresentation) -> Matrix:
    """The linear map x -> rho(x) as an (m*m) x dim(L) matrix of flattened actions."""
    cols = [a.flat() for a in rho.actions]
    mm = rho.module_dim * rho.module_dim
    return Matrix.from_columns(cols, mm) if cols else Matrix.zeros(mm, 0)


def rep_kernel(rho: HomRepresentation) -> Subspace:
    """{x : rho(x) = 0}."""
    d = rho.algebra.dim
    if d == 0:
        return Subspace.zero(0)
    # rows: one per matrix entry position that is nonzero somewhere
    m = rho.module_dim
    rows = []
    flats = [a.flat() for a in rho.actions]
    for pos in range(m * m):
        row = [f[pos] for f in flats]
        if any(row):
            rows.append(row)
    if not rows:
        return Subspace.full(d)
    return kernel(Matrix(len(rows), d, rows))


def is_faithful(rho: HomRepresentation) -> bool:
    return rep_kernel(rho).is_zero()


def restrict_to_submodule(rho: HomRepresentation, W: Subspace) -> HomRepresentation:
    """Restriction to an invariant subspace W, written in W's canonical basis."""
    for i, a in enumerate(rho.actions):
        if not W.is_invariant(a):
            raise ValueError(f"subspace is not invariant under action {i}")
    if not W.is_invariant(rho.beta):
        raise ValueError("subspace is not invariant under the module twist")
    w = W.dim
    actions = tuple(restricted_matrix(a, W) if w else Matrix.zeros(0) for a in rho.actions)
    beta = restricted_matrix(rho.beta, W) if w else Matrix.zeros(0)
    return HomRepresentation(rho.algebra, w, actions, beta, rho.orientation)


def cyclic_submodule(rho: HomRepresentation, v: Sequence) -> Subspace:
    """Least subspace containing v and stable under every action and the twist."""
    gens = list(rho.actions) + [rho.beta]
    S = Subspace(rho.module_dim, [v])
    todo = list(S.basis)
    while todo:
        w = todo.pop()
        fresh = [u for u in (g @ w for g in gens) if not S.contains(u)]
        if fresh:
            S2 = S.extend(fresh)
            todo += [u for u in fresh]
            S = S2
    return S


def pull_back(rho: HomRepresentation, phi: Matrix, source: HomAlgebra) -> HomRepresentation:
    """rho o phi for a homomorphism phi: source -> rho.algebra."""
    hom = check_homomorphism(phi, source, rho.algebra)
    if not hom:
        raise ValueError(f"pull-back along a non-homomorphism ({hom.law} at {hom.witness})")
    actions = tuple(rho.act(phi.column(j)) for j in range(source.dim))
    return HomRepresentation(source, rho.module_dim, actions, rho.beta, rho.orientation)


def conjugate(rho: HomRepresentation, P: Matrix, P_inv: Matrix) -> HomRepresentation:
    """Change of module basis: x -> P rho(x) P^-1, beta -> P beta P^-1."""
    actions = tuple(P @ a @ P_inv for a in rho.actions)
    return rho.with_actions(actions, P @ rho.beta @ P_inv)
