import pytest

from catalog import ADO_CATALOG, H3, H3_LAMBDA, N4, N4_YAU, SWAP2, abelian

from homlie.adopipe import (
    Grading,
    ado,
    check_alpha_derivation,
    distinguishing_search,
    distinguishing_rep,
    euler_derivation,
    extend_by_derivation,
    find_grading,
    graded_faithful_rep,
    restrict_to_subalgebra,
    restrict_to_z_kernel,
    validate_grading,
    verify_certificate,
)
from homlie.errors import (
    DegenerateTwist,
    InvalidGrading,
    NotADerivation,
    NotInvariant,
    NotNilpotent,
    PreconditionFailed,
    SearchExhausted,
)
from homlie.exactla import Matrix, Subspace, kernel
from homlie.homcore import HomAlgebra, center, current_algebra, quotient_algebra
from homlie.homrep import (
    HomRepresentation,
    check_rep,
    check_rep_multiplicative,
    rep_kernel,
    zero_rep,
)

# unipotent twist e1 -> e1 + e3: multiplicative, but no twist-stable complement of the center
H3_UNIPOTENT = HomAlgebra.from_brackets(3, {(0, 1): (0, 0, 1)},
                                        Matrix.from_rows([[1, 0, 0], [0, 1, 0], [1, 0, 1]]))


def test_alpha_derivation_examples():
    assert check_alpha_derivation(H3, Matrix.zeros(3))
    ab = abelian(2, SWAP2)
    assert check_alpha_derivation(ab, Matrix.from_rows([[2, 1], [1, 2]]))
    assert not check_alpha_derivation(ab, Matrix.diag([1, 2]))
    C = current_algebra(H3, 3)
    D = euler_derivation(C)
    assert check_alpha_derivation(C.algebra, D)
    assert kernel(D).is_zero()
    assert not check_alpha_derivation(H3, Matrix.identity(3))


def test_extend_by_derivation():
    _, rho = extend_by_derivation(H3, Matrix.zeros(3))
    assert rho.module_dim == 4 and check_rep(rho)
    assert rep_kernel(rho) == center(H3)
    C = current_algebra(H3, 3)
    ambient, rho = extend_by_derivation(C.algebra, euler_derivation(C))
    assert ambient.dim == 7 and rho.module_dim == 7 and rep_kernel(rho).is_zero()
    Cl = current_algebra(H3_LAMBDA, 3)
    _, rho = extend_by_derivation(Cl.algebra, euler_derivation(Cl))
    assert check_rep(rho) and check_rep_multiplicative(rho)
    with pytest.raises(NotADerivation):
        extend_by_derivation(H3, Matrix.identity(3))


def test_find_grading():
    assert find_grading(abelian(3)).degrees == (1, 1, 1)
    assert find_grading(H3).degrees == (1, 1, 2)
    assert find_grading(N4).degrees == (1, 1, 2, 3)
    g = find_grading(N4_YAU)
    assert g.degrees == (1, 1, 2, 3)
    validate_grading(N4_YAU, g)
    assert find_grading(H3_UNIPOTENT) is None


def test_validate_grading_rejects():
    with pytest.raises(InvalidGrading):
        validate_grading(H3, (1, 1, 1))
    with pytest.raises(InvalidGrading):
        validate_grading(H3, (1, 2))
    with pytest.raises(InvalidGrading):
        validate_grading(H3, (0, 1, 1))
    with pytest.raises(InvalidGrading):
        validate_grading(abelian(2, SWAP2), (1, 2))


def test_graded_faithful_rep():
    cert = graded_faithful_rep(H3, (1, 1, 2))
    assert cert.valid and cert.module_dim == 7 and cert.nilindex <= 3 + 1
    for k in (1, 2, 3):
        assert graded_faithful_rep(abelian(k), [1] * k).module_dim == k + 1
    cl = graded_faithful_rep(H3_LAMBDA, Grading.standard((1, 1, 2)))
    assert cl.valid and cl.module_dim == 7
    with pytest.raises(DegenerateTwist):
        graded_faithful_rep(abelian(2, Matrix.zeros(2)), (1, 1))


def test_ado_examples():
    c1 = ado(abelian(1))
    assert c1.module_dim == 2 and c1.valid
    c = ado(H3)
    assert c.module_dim == 7 and c.nilindex <= 7
    cl = ado(H3_LAMBDA)
    assert cl.module_dim == 7 and cl.multiplicative and cl.nondegenerate


def test_ado_preconditions():
    with pytest.raises(PreconditionFailed):
        ado(abelian(2, Matrix.zeros(2)))
    with pytest.raises(PreconditionFailed):
        ado(H3.with_twist(Matrix.diag([1, 1, 2])))
    with pytest.raises(NotNilpotent):
        ado(HomAlgebra.from_brackets(2, {(0, 1): (0, 1)}))
    with pytest.raises(PreconditionFailed):
        ado(H3_UNIPOTENT, path="graded")
    with pytest.raises(ValueError):
        ado(H3, path="sideways")


def test_verify_certificate_catches_tampering():
    cert = ado(H3)
    assert verify_certificate(H3, cert).ok
    rho = cert.representation
    zeroed = rho.with_actions((Matrix.zeros(7),) + rho.actions[1:])
    report = verify_certificate(H3, zeroed)
    faithful = report.get("faithful")
    assert not faithful and faithful.witness is not None
    assert not rep_kernel(zeroed).is_zero()
    report = verify_certificate(H3, rho.with_actions(rho.actions, Matrix.zeros(7)))
    assert not report.get("rep-nondegeneracy")
    assert not verify_certificate(N4, cert).ok


def test_distinguishing_rep():
    L = abelian(2)
    base = graded_faithful_rep(L, (1, 1)).representation
    rho, power = distinguishing_search(L, (0, 1), (1, 0), base)
    assert power in (1, 2)
    Kz = kernel(rho.act((0, 1)))
    assert any(any(rho.act((1, 0)) @ w) for w in Kz.basis)
    assert distinguishing_rep(L, (0, 1), (1, 0), base).module_dim == rho.module_dim
    with pytest.raises(SearchExhausted) as info:
        distinguishing_rep(L, (0, 1), (1, 0), base, bound=0)
    assert info.value.bound == 0
    with pytest.raises(PreconditionFailed):
        distinguishing_rep(L, (0, 1), (0, 2), base)


def test_distinguishing_rep_needs_central_z():
    base = ado(H3).representation
    with pytest.raises(PreconditionFailed):
        distinguishing_rep(H3, (1, 0, 0), (0, 1, 0), base)


def test_restrict_to_z_kernel():
    L = abelian(2)
    z = (0, 1)
    Q = quotient_algebra(L, Subspace(2, [z]))
    rho = zero_rep(L, 2)
    same = restrict_to_z_kernel(L, rho, z, Q)
    assert same.module_dim == 2 and same.algebra == Q.algebra
    inv = HomRepresentation(L, 1, (Matrix.zeros(1), Matrix.identity(1)), Matrix.identity(1))
    assert restrict_to_z_kernel(L, inv, z).module_dim == 0


def test_restrict_to_z_kernel_on_h3_center():
    z, x = (0, 0, 1), (1, 0, 0)
    rho = distinguishing_rep(H3, z, x, ado(H3).representation)
    Q = quotient_algebra(H3, Subspace(3, [z]))
    tau = restrict_to_z_kernel(H3, rho, z, Q)
    assert check_rep(tau)
    qx = Q.projection @ x
    assert not tau.act(qx).is_zero()
    std = HomRepresentation(H3, 3, (Matrix.unit(3, 3, 0, 1), Matrix.unit(3, 3, 1, 2),
                                    Matrix.unit(3, 3, 0, 2)), Matrix.identity(3))
    with pytest.raises(NotInvariant):
        restrict_to_z_kernel(H3, std, (1, 0, 0))


def test_restrict_to_subalgebra():
    cert = ado(N4)
    S = Subspace(4, [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    sub = restrict_to_subalgebra(cert.representation, S)
    assert sub.algebra.dim == 3 and sub.algebra.is_abelian()
    assert verify_certificate(sub.algebra, sub).ok


@pytest.mark.parametrize("name", ["ab2swap", "ab3diag", "H3"])
def test_general_path_small(name):
    L = ADO_CATALOG[name][0]
    cert = ado(L, path="general")
    assert cert.path == "general" and verify_certificate(L, cert).ok
    assert cert.module_dim <= graded_faithful_rep(L, find_grading(L)).module_dim


def test_general_path_without_grading():
    cert = ado(H3_UNIPOTENT)
    assert cert.path == "general" and cert.valid
    assert any("ideal chain" in line for line in cert.trace)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["H3lambda", "n4"])
def test_general_path_slow(name):
    L = ADO_CATALOG[name][0]
    cert = ado(L, path="general")
    assert verify_certificate(L, cert).ok
