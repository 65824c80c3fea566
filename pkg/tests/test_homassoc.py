import random

import pytest

from catalog import H3, H3_LAMBDA, abelian

from homlie.adopipe import ado
from homlie.errors import DegenerateTwist, PreconditionFailed
from homlie.exactla import Matrix, Subspace, rank
from homlie.homassoc import (
    adjoin_unit,
    check_birep,
    check_hom_associative,
    commutator_algebra,
    embedding_from_rep,
    endomorphism_hom_algebra,
    faithful_assoc_rep,
    left_annihilator,
    left_regular_rep,
    right_regular_rep,
    theorem_a_backward,
    theorem_a_forward,
)
from homlie.homcore import HomAlgebra, check_hom_lie, check_multiplicative
from homlie.homrep import (
    HomRepresentation,
    action_matrix,
    check_rep,
    check_rep_multiplicative,
    rep_kernel,
    zero_rep,
)


def assoc(dim, products, twist=None):
    return HomAlgebra.from_brackets(dim, products, twist, flavor="associative")


def upper_nilpotent_2x2():
    # span{E12} inside 2x2 matrices: E12 E12 = 0, a one-dimensional zero-product algebra
    return assoc(1, {})


def strictly_upper_3x3():
    # E12, E23, E13 with E12 E23 = E13
    return assoc(3, {(0, 1): (0, 0, 1)})


def test_hom_associativity_examples():
    M2 = endomorphism_hom_algebra(Matrix.identity(2))
    assert check_hom_associative(M2)
    bad = assoc(2, {(0, 0): (0, 1), (0, 1): (1, 0)})
    v = check_hom_associative(bad)
    assert not v and v.witness == (0, 0, 0)


def test_endomorphism_algebra():
    E = endomorphism_hom_algebra(Matrix.diag([1, 2]))
    assert E.dim == 4
    assert check_hom_associative(E) and check_multiplicative(E)
    assert check_hom_lie(commutator_algebra(E))
    plain = endomorphism_hom_algebra(Matrix.identity(2))
    # ordinary matrix product: E11 E12 = E12
    assert plain.product((1, 0, 0, 0), (0, 1, 0, 0)) == (0, 1, 0, 0)
    with pytest.raises(DegenerateTwist):
        endomorphism_hom_algebra(Matrix.diag([1, 0]))


def test_commutator_algebra():
    assert commutator_algebra(assoc(2, {(0, 0): (1, 0), (0, 1): (0, 1), (1, 0): (0, 1)})).is_abelian()
    gl2 = commutator_algebra(endomorphism_hom_algebra(Matrix.identity(2)))
    # [E12, E21] = E11 - E22
    assert gl2.product((0, 1, 0, 0), (0, 0, 1, 0)) == (1, 0, 0, -1)


def _random_hom_associative(rng):
    """Yau twists of associative matrix algebras by conjugation-like morphisms."""
    beta = Matrix.diag([rng.choice([1, 2, -1, 3]) for _ in range(2)])
    return endomorphism_hom_algebra(beta, check=False)


def test_commutator_of_hom_associative_is_hom_lie():
    rng = random.Random(7)
    for _ in range(10):
        A = _random_hom_associative(rng)
        assert check_hom_associative(A)
        assert check_hom_lie(commutator_algebra(A))


def test_adjoin_unit():
    A = adjoin_unit(assoc(1, {}))
    assert A.dim == 2
    N = strictly_upper_3x3()
    Nhat = adjoin_unit(N)
    assert Nhat.dim == 4 and check_hom_associative(Nhat)
    u = (0, 0, 0, 1)
    for i in range(3):
        e = tuple(int(k == i) for k in range(4))
        assert Nhat.product(u, e) == Nhat.alpha(e) == Nhat.product(e, u)
    with pytest.raises(PreconditionFailed):
        adjoin_unit(assoc(1, {}, Matrix.zeros(1)))


def test_regular_birepresentation():
    for A in (strictly_upper_3x3(), endomorphism_hom_algebra(Matrix.diag([1, 2]))):
        assert check_birep(A, left_regular_rep(A), right_regular_rep(A), multiplicative=True)
    N = strictly_upper_3x3()
    # x A = 0 exactly for x in span{E23, E13}
    assert left_annihilator(N) == Subspace(3, [(0, 1, 0), (0, 0, 1)])
    Z = assoc(2, {})
    assert check_birep(Z, zero_rep(Z, 2), zero_rep(Z, 2))


def test_faithful_assoc_rep():
    rho = faithful_assoc_rep(assoc(1, {}))
    assert rho.module_dim == 2
    assert rho.actions[0] @ (0, 1) == (1, 0)
    assert rep_kernel(rho).is_zero()
    N = strictly_upper_3x3()
    big = faithful_assoc_rep(N)
    assert big.module_dim == 4 and rank(action_matrix(big)) == 3
    with pytest.raises(PreconditionFailed):
        faithful_assoc_rep(assoc(1, {}, Matrix.zeros(1)))


def test_theorem_a_forward_examples():
    L = abelian(1)
    rho = HomRepresentation(L, 2, (Matrix.unit(2, 2, 0, 1),), Matrix.identity(2))
    emb = theorem_a_forward(L, rho)
    assert emb.matrix.shape == (4, 1)
    cert = ado(H3)
    assert cert.module_dim == 7
    theorem_a_forward(H3, cert.representation)
    singular = HomRepresentation(L, 2, (Matrix.unit(2, 2, 0, 1),), Matrix.diag([1, 0]))
    with pytest.raises(PreconditionFailed):
        theorem_a_forward(L, singular)


def test_theorem_a_backward_examples():
    A = endomorphism_hom_algebra(Matrix.diag([1, 2]))
    L = commutator_algebra(A)
    rho = theorem_a_backward(A, Matrix.identity(4), L)
    assert rho.module_dim == 5 and rep_kernel(rho).is_zero()
    zero = HomAlgebra(0, [], Matrix.zeros(0))
    r0 = theorem_a_backward(A, Matrix.zeros(4, 0), zero)
    assert r0.module_dim == 5 and rep_kernel(r0).is_zero()
    # e1 -> E11, e2 -> E12, e3 -> 0 does not preserve [e1, e2] = e3
    iota = Matrix.from_columns([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 0)], 4)
    with pytest.raises(PreconditionFailed) as info:
        theorem_a_backward(A, iota, H3)
    assert info.value.witness == (0, 1)


def test_round_trip_on_h3_lambda():
    rho = ado(H3_LAMBDA).representation
    theorem_a_forward(H3_LAMBDA, rho)
    A, iota = embedding_from_rep(rho)
    back = theorem_a_backward(A, iota, H3_LAMBDA, check_algebra=False)
    assert check_rep(back) and check_rep_multiplicative(back) and rep_kernel(back).is_zero()
