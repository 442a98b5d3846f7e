from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from monorep import linalg


def small_matrices(max_dim=4, lo=-6, hi=6):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_snf_example():
    sf = linalg.smith_normal_form([[2, 0], [0, 3]])
    assert list(sf.diag) == [1, 6]
    sf = linalg.smith_normal_form([[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]])
    assert list(sf.diag) == [1, 10, 30, 0]


def test_snf_empty_and_zero():
    assert linalg.smith_normal_form([], 3).rank == 0
    assert list(linalg.smith_normal_form([[0, 0], [0, 0]]).diag) == [0, 0]


@given(small_matrices())
def test_snf_transforms_and_divisibility(A):
    sf = linalg.smith_normal_form(A)
    n = len(A[0])
    LA = linalg.matmul(sf.left, A, n)
    assert linalg.matmul(LA, sf.right, n) == sf.diag_matrix()
    assert abs(linalg.determinant(sf.left)) == 1
    assert abs(linalg.determinant(sf.right)) == 1
    d = [x for x in sf.diag if x]
    assert all(x > 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))


@given(small_matrices())
def test_snf_against_sympy(A):
    ours = sorted(abs(x) for x in linalg.smith_normal_form(A).diag if x)
    S = sympy_snf(Matrix(A), domain=ZZ)
    theirs = sorted(abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0)
    assert ours == theirs


@given(small_matrices())
def test_saturated_kernel(A):
    n = len(A[0])
    K = linalg.kernel_saturated(A, n)
    assert len(K) == n - linalg.rational_rank(A, n)
    for v in K:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
    if K:
        # saturation: the kernel basis has trivial cokernel torsion
        assert all(x == 1 for x in linalg.smith_normal_form(K, n).diag)


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=0, max_size=5))
def test_hermite_basis_spans_same_lattice(vs):
    H = linalg.hermite_basis(vs, 3)
    assert len(H) == (linalg.integer_rank(vs, 3) if vs else 0)
    if H:
        assert len(linalg.lattice_coordinates(H, vs, 3)) == len(vs)
        assert linalg.hermite_basis(vs + H, 3) == H


def test_torsion_primes():
    assert linalg.torsion_primes([[2, 0], [0, 3]]) == {2, 3}
    assert linalg.torsion_primes([[1, 1]]) == set()
    assert linalg.prime_factors(360) == {2, 3, 5}


@given(small_matrices(3, -4, 4))
def test_determinant_against_sympy(A):
    n = len(A)
    A = [row[:n] + [0] * (n - len(row)) for row in A]
    assert linalg.determinant(A) == Matrix(A).det()


def test_solve_rational():
    assert linalg.solve_rational([[2, 0], [0, 4]], [1, 1], 2) == [Fraction(1, 2), Fraction(1, 4)]
    assert linalg.solve_rational([[1, 1], [1, 1]], [1, 2], 2) is None
    with pytest.raises(linalg.UnderdeterminedSystem):
        linalg.solve_rational([[1, 1]], [1], 2)
