import pytest

from monorep.builders import builtin, full_matrix_monoid, matrix_monoid, mp_monoid, quiver_monoid
from monorep.monoid import MonoidError, check_associative


@pytest.mark.parametrize(
    "name,size",
    [("sing2x2", 11), ("M(2,2)", 16), ("M(1,3)", 3), ("T2", 4), ("T3", 27), ("Mp(2)", 12), ("Mp(3)", 20),
     ("S3", 6), ("C6", 6), ("quiverA:[[1,1],[1,1]]", 6), ("quiverA:[[2]]", 4)],
)
def test_sizes_and_associativity(name, size):
    M = builtin(name)
    assert M.size == size
    assert check_associative(M.table) is None
    assert M.identity == 0


def test_matrix_monoid_labels():
    M = full_matrix_monoid(2, 2)
    assert M.label(0) == "[1,0;0,1]"
    assert len(set(M.labels)) == 16


def test_exponents():
    assert builtin("Mp(2)").omega.exponent() == 2
    assert builtin("Mp(3)").omega.exponent() == 3
    assert builtin("M(2,2)").omega.exponent() == 6


def test_mp_structure():
    M = mp_monoid(3)
    # x generates a cyclic group of order p and z is a nontrivial idempotent
    assert M.omega.period[1] == 3
    z = 3
    assert M.mul(z, z) == z


def test_quiver_monoid_zero():
    M = quiver_monoid([[1, 1], [1, 1]])
    z = 1
    assert all(M.mul(z, m) == z == M.mul(m, z) for m in range(M.size))


def test_generated_matrix_monoid():
    gens = [[[1, 1], [0, 1]], [[0, 1], [1, 0]], [[1, 0], [0, 0]]]
    M = matrix_monoid(2, 2, gens)
    assert M.size == 16


@pytest.mark.parametrize("bad", ["Mp(4)", "T9", "nope", "quiverA:[[1,", "S7", "M(2,6)"])
def test_bad_builtins(bad):
    with pytest.raises(MonoidError):
        builtin(bad)
