from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import sympy_nullity, sympy_rank

from homlie.errors import SingularMatrix
from homlie.exactla import (
    Matrix,
    QuotientMap,
    SparseMatrix,
    Subspace,
    charpoly,
    inverse,
    kernel,
    minpoly,
    rank,
    rational_eigenvectors,
    rational_roots,
    solve,
    tensor_matrix,
)

small = st.integers(min_value=-3, max_value=3)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_kernel_examples():
    assert kernel(Matrix.identity(2)).is_zero()
    assert kernel(Matrix.from_rows([[1, 1], [1, 1]])) == Subspace(2, [(1, -1)])
    assert kernel(Matrix.zeros(3)).is_full()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_and_kernel_against_sympy(rows):
    m = Matrix.from_rows(rows)
    assert rank(m) == sympy_rank([[Fraction(x) for x in r] for r in rows])
    K = kernel(m)
    assert K.dim == sympy_nullity([[Fraction(x) for x in r] for r in rows], m.cols)
    for v in K.basis:
        assert not any(m @ v)


def test_eigenvector_examples():
    assert rational_eigenvectors(Matrix.diag([2, 3])) == [(2, (1, 0)), (3, (0, 1))]
    pairs = rational_eigenvectors(Matrix.from_rows([[0, 1], [1, 0]]))
    found = {lam: Subspace(2, [v]) for lam, v in pairs}
    assert found == {1: Subspace(2, [(1, 1)]), -1: Subspace(2, [(1, -1)])}
    assert rational_eigenvectors(Matrix.from_rows([[0, -1], [1, 0]])) == []


def test_polynomials():
    m = Matrix.from_rows([[0, -1], [1, 0]])
    assert charpoly(m) == (1, 0, 1)
    assert minpoly(Matrix.identity(3)) == (-1, 1)
    assert minpoly(Matrix.diag([2, 2, 3])) == (6, -5, 1)
    assert sorted(rational_roots((-6, 11, -6, 1))) == [1, 2, 3]
    assert sorted(rational_roots((Fraction(-1, 4), 0, 1))) == [Fraction(-1, 2), Fraction(1, 2)]


def test_tensor_examples():
    assert tensor_matrix(Matrix.identity(2), Matrix.identity(3)) == Matrix.identity(6)
    a = Matrix.from_rows([[1, 2], [3, 4]])
    assert tensor_matrix(a, Matrix.zeros(2)).is_zero()
    n = Matrix.from_rows([[0, 1], [0, 0]])
    assert tensor_matrix(n, n) == Matrix.unit(4, 4, 0, 3)


@settings(max_examples=30, deadline=None)
@given(matrices(3, 3), matrices(2, 3))
def test_tensor_mixed_product(ra, rb):
    a, b = Matrix.from_rows(ra), Matrix.from_rows(rb)
    t = tensor_matrix(a, b)
    for i in range(a.cols):
        for j in range(b.cols):
            v = tuple(int(p == i) for p in range(a.cols))
            w = tuple(int(q == j) for q in range(b.cols))
            vw = tuple(x * y for x in v for y in w)
            assert t @ vw == tuple(x * y for x in a @ v for y in b @ w)


def test_inverse_and_solve():
    m = Matrix.from_rows([[2, 1], [1, 1]])
    assert m @ inverse(m) == Matrix.identity(2)
    with pytest.raises(SingularMatrix):
        inverse(Matrix.from_rows([[1, 2], [2, 4]]))
    assert solve(m, (3, 2)) == (1, 1)
    assert solve(Matrix.from_rows([[1, 1], [1, 1]]), (1, 2)) is None


def test_subspace_operations():
    U = Subspace(3, [(1, 0, 0), (0, 1, 0)])
    V = Subspace(3, [(0, 1, 0), (0, 0, 1)])
    assert (U & V) == Subspace(3, [(0, 1, 0)])
    assert (U + V).is_full()
    assert U.annihilator() == Subspace(3, [(0, 0, 1)])
    assert U.contains((2, -1, 0)) and not U.contains((0, 0, 1))
    assert U.coordinates((2, 5, 0)) == (2, 5)
    swap = Matrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert U.is_invariant(swap) and not V.is_invariant(swap)


def test_quotient_map_induces_twist():
    big = Subspace.full(3)
    small = Subspace(3, [(0, 0, 1)])
    q = QuotientMap(big, small)
    m = Matrix.from_rows([[1, 2, 0], [0, 3, 0], [5, 5, 7]])
    assert q.induced_matrix(m) == Matrix.from_rows([[1, 2], [0, 3]])


def square_matrices(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=40, deadline=None)
@given(square_matrices())
def test_sparse_kernel_matches_dense(rows):
    m = Matrix.from_rows(rows)
    s = SparseMatrix.from_matrix(m)
    assert s.to_matrix() == m
    vecs = s.kernel_vectors()
    dense = [tuple(v.get(i, Fraction(0)) for i in range(m.cols)) for v in vecs]
    assert Subspace(m.cols, dense) == kernel(m)
    assert len(vecs) == kernel(m).dim


def test_sparse_kron_matches_dense():
    a = Matrix.from_rows([[1, 2], [0, 3]])
    b = Matrix.from_rows([[0, 1, 0], [4, 0, 0], [0, 0, -1]])
    sa, sb = SparseMatrix.from_matrix(a), SparseMatrix.from_matrix(b)
    assert sa.kron(sb).to_matrix() == tensor_matrix(a, b)
    combo = SparseMatrix.combine([2, -1], [sa, sa])
    assert combo.to_matrix() == a
