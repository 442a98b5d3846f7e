import pytest
from sympy import Matrix

from monorep import linalg
from monorep.builders import builtin
from monorep.integral import (
    algebra_product_int,
    choose_nonmodular_prime,
    integral_radical,
    prime_report,
    regular_idempotents,
    sandwich,
    trace_form,
)


def test_sandwich_snf_sing2x2():
    M = builtin("sing2x2")
    e = [x for x in regular_idempotents(M) if len(M.green.j_classes[M.green.j_of[x]]) == 9][0]
    sd = sandwich(M, e)
    assert list(linalg.smith_normal_form(sd.phi, len(sd.L)).diag) == [1, 1, 2]
    assert sd.coker_torsion_primes == {2}


@pytest.mark.parametrize(
    "name,groups,sandwich_p,jtors,ell",
    [
        ("sing2x2", set(), {2}, set(), 3),
        ("M(2,2)", {2, 3}, {2}, set(), 7),
        ("T3", {2, 3}, None, {2}, 7),
        ("Mp(2)", {2}, {2}, set(), 3),
        ("Mp(3)", {3}, {3}, set(), 7),
        ("C1", set(), set(), set(), 2),
    ],
)
def test_prime_reports(name, groups, sandwich_p, jtors, ell):
    M = builtin(name)
    pr = prime_report(M)
    assert pr.group_order_primes == groups
    if sandwich_p is not None:
        assert pr.sandwich_torsion_primes == sandwich_p
    assert pr.j_power_torsion_primes == jtors
    assert choose_nonmodular_prime(M, pr) == ell


def test_t3_radical_torsion():
    rad = integral_radical(builtin("T3"))
    assert rad.ranks() == [7, 1]
    assert rad.loewy_length == 3
    assert prime_report(builtin("T3"), rad).torsion_by_power == {1: {2}}


@pytest.mark.parametrize("name", ["sing2x2", "T3", "quiverA:[[1,1],[1,1]]", "Mp(2)", "T2"])
def test_trace_form_kernel_against_sympy(name):
    M = builtin(name)
    L = trace_form(M)
    rad = integral_radical(M)
    assert len(rad.basis) == len(Matrix(L).nullspace())
    # the radical is a two-sided ideal
    n = M.size
    for v in rad.basis:
        for m in range(n):
            unit = [int(i == m) for i in range(n)]
            for w in (algebra_product_int(M, unit, v), algebra_product_int(M, v, unit)):
                assert all(sum(a * b for a, b in zip(row, w)) == 0 for row in L)


def test_quiver_radical_squares_to_zero():
    rad = integral_radical(builtin("quiverA:[[1,1],[1,1]]"))
    assert rad.ranks() == [2]
    assert rad.loewy_length == 2


def test_trace_form_is_left_regular_trace():
    M = builtin("sing2x2")
    L = trace_form(M)
    t = M.table
    for i in range(M.size):
        for j in range(M.size):
            g = t[i, j]
            assert L[i][j] == sum(int(t[g, x] == x) for x in range(M.size))
