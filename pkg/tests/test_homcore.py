import pytest

from catalog import H3, H3_LAMBDA, L_BAD, N4, ROTATION, SWAP2, abelian, heisenberg

from homlie.errors import (
    AnticommutativityError,
    DegenerateTwist,
    FieldExtensionNeeded,
    NotAHomomorphism,
    NotAnIdeal,
    NotNilpotent,
    PreconditionFailed,
)
from homlie.exactla import Matrix, Subspace
from homlie.homcore import (
    HomAlgebra,
    IdealChain,
    center,
    check_hom_lie,
    check_ideal_chain,
    check_multiplicative,
    check_nondegenerate,
    current_algebra,
    hom_closure,
    is_nilpotent,
    lower_central_series,
    nilindex,
    quotient_algebra,
    refine_ideal,
    strong_nilpotency_chain,
    untwist,
    yau_twist,
)


def span(n, *vs):
    return Subspace(n, vs)


def test_stored_anticommutativity_is_validated():
    table = [[(0, 0), (1, 0)], [(1, 0), (0, 0)]]
    with pytest.raises(AnticommutativityError):
        HomAlgebra(2, table, Matrix.identity(2))


def test_hom_jacobi_examples():
    assert check_hom_lie(abelian(2, SWAP2))
    assert check_hom_lie(H3)
    v = check_hom_lie(L_BAD)
    assert not v and v.witness == (0, 1, 2)


def test_multiplicativity_examples():
    assert check_multiplicative(N4)
    assert check_multiplicative(H3_LAMBDA)
    v = check_multiplicative(heisenberg(Matrix.diag([1, 1, 2])))
    assert not v and v.witness == (0, 1)


def test_nondegeneracy_examples():
    assert check_nondegenerate(H3)
    assert not check_nondegenerate(abelian(3, Matrix.zeros(3)))
    assert not check_nondegenerate(abelian(2, Matrix.from_rows([[1, 1], [1, 1]])))


def test_yau_twist_and_untwist():
    assert H3_LAMBDA.product((1, 0, 0), (0, 1, 0)) == (0, 0, 6)
    assert yau_twist(H3, Matrix.identity(3)) == H3
    z = yau_twist(H3, Matrix.zeros(3))
    assert z.is_abelian() and z.twist.is_zero() and check_hom_lie(z)
    assert untwist(H3_LAMBDA) == H3
    ab = abelian(2, SWAP2)
    assert untwist(ab).is_abelian() and untwist(ab).twist.is_identity()
    with pytest.raises(NotAHomomorphism):
        yau_twist(H3, Matrix.diag([1, 1, 2]))
    with pytest.raises(DegenerateTwist):
        untwist(abelian(2, Matrix.zeros(2)))
    with pytest.raises(PreconditionFailed):
        untwist(heisenberg(Matrix.diag([1, 1, 2])))


def test_current_algebra():
    C = current_algebra(H3, 3)
    assert C.algebra.dim == 6
    # [e1 t, e2 t] = e3 t^2
    assert C.algebra.product(C.embed((1, 0, 0), 1), C.embed((0, 1, 0), 1)) == C.embed((0, 0, 1), 2)
    assert check_hom_lie(C.algebra)
    assert current_algebra(N4, 2).algebra.is_abelian()
    assert check_multiplicative(current_algebra(H3_LAMBDA, 3).algebra)
    assert nilindex(current_algebra(N4, 3).algebra) <= min(nilindex(N4), 3)
    with pytest.raises(PreconditionFailed):
        current_algebra(H3, 1)


def test_center_and_lower_central_series():
    assert center(abelian(2)).is_full()
    assert center(H3) == span(3, (0, 0, 1))
    assert center(N4) == span(4, (0, 0, 0, 1))
    assert lower_central_series(abelian(2)) == [Subspace.full(2), Subspace.zero(2)]
    assert nilindex(abelian(2)) == 2
    assert lower_central_series(H3) == [Subspace.full(3), span(3, (0, 0, 1)), Subspace.zero(3)]
    assert nilindex(H3) == 3
    assert lower_central_series(N4)[1:] == [span(4, (0, 0, 1, 0), (0, 0, 0, 1)),
                                            span(4, (0, 0, 0, 1)), Subspace.zero(4)]
    assert nilindex(N4) == 4


def test_non_nilpotent_lie_algebra():
    # [e1, e2] = e2
    L = HomAlgebra.from_brackets(2, {(0, 1): (0, 1)})
    assert not is_nilpotent(L) and nilindex(L) is None
    with pytest.raises(NotNilpotent):
        strong_nilpotency_chain(L)


def test_hom_closure():
    assert hom_closure(H3, Subspace.zero(3)).is_zero()
    assert hom_closure(H3, span(3, (1, 0, 0))) == span(3, (1, 0, 0), (0, 0, 1))
    assert hom_closure(H3, Subspace.full(3)).is_full()
    ab = abelian(2, SWAP2)
    assert hom_closure(ab, span(2, (1, 0)), "subalgebra").is_full()


def test_quotients():
    assert quotient_algebra(H3, Subspace.zero(3)).algebra == H3
    Q = quotient_algebra(H3, span(3, (0, 0, 1)))
    assert Q.algebra.dim == 2 and Q.algebra.is_abelian()
    assert quotient_algebra(H3, Subspace.full(3)).algebra.dim == 0
    with pytest.raises(NotAnIdeal):
        quotient_algebra(H3, span(3, (1, 0, 0)))


def test_strong_nilpotency_chain_examples():
    chain = strong_nilpotency_chain(H3)
    assert check_ideal_chain(chain)
    assert [I.dim for I in chain.links] == [3, 2, 1, 0]
    assert chain.links[2] == span(3, (0, 0, 1))
    swapped = strong_nilpotency_chain(abelian(2, SWAP2))
    assert swapped.links[1] in (span(2, (1, 1)), span(2, (1, -1)))
    with pytest.raises(FieldExtensionNeeded):
        strong_nilpotency_chain(abelian(2, ROTATION))


def test_chain_validator_rejects_bad_chains():
    full, zero = Subspace.full(3), Subspace.zero(3)
    # skips a dimension
    assert not check_ideal_chain(IdealChain(H3, (full, span(3, (0, 0, 1)), zero)))
    # span{e1, e2} is not an ideal of H3
    bad = IdealChain(H3, (full, span(3, (1, 0, 0), (0, 1, 0)), span(3, (0, 1, 0)), zero))
    assert not check_ideal_chain(bad)


def test_refine_ideal():
    chain = refine_ideal(N4, span(4, (0, 0, 1, 0), (0, 0, 0, 1)))
    assert check_ideal_chain(chain, top=chain.links[0])
    assert len(chain) == 3
    with pytest.raises(NotAnIdeal):
        refine_ideal(H3, span(3, (1, 0, 0)))
