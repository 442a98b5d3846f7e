import cmath

import numpy as np
import pytest

from monorep import linalg
from monorep.builders import builtin, full_matrix_monoid
from monorep.characters import (
    MonoidContext,
    brauer_lift,
    brauer_value,
    projective_character_vanishing,
    unitriangular_under_apex,
)
from monorep.cyclotomic import CycInt
from monorep.gf import make_field


def numeric(v: CycInt) -> complex:
    z = cmath.exp(2j * cmath.pi / v.n)
    return sum(c * z**k for k, c in enumerate(v.c))


def test_cyclic_group_table():
    t = MonoidContext(builtin("C2")).ordinary_table()
    assert [[int(v) for v in row] for row in t.rows] == [[1, 1], [1, -1]]


@pytest.mark.parametrize("name", ["S3", "C6", "S4"])
def test_group_orthogonality(name):
    M = builtin(name)
    ctx = MonoidContext(M)
    t = ctx.ordinary_table()
    sizes = [len(M.classes.classes[c]) for c in t.classes]
    for a, r1 in enumerate(t.rows):
        for b, r2 in enumerate(t.rows):
            s = sum(k * numeric(x) * numeric(y).conjugate() for k, x, y in zip(sizes, r1, r2))
            assert abs(s - (M.size if a == b else 0)) < 1e-6
    assert sum(d * d for d in t.dims) == M.size


@pytest.mark.parametrize("name,dims", [("sing2x2", [1, 3, 1]), ("M(2,2)", [1, 3, 1, 1, 2])])
def test_ordinary_dimensions(name, dims):
    t = MonoidContext(builtin(name)).ordinary_table()
    assert sorted(t.dims) == sorted(dims)
    assert sum(d * d for d in t.dims) == builtin(name).size


def test_brauer_value_of_permutation():
    F4 = make_field(2, 2)
    P = np.zeros((3, 3), dtype=np.int64)
    P[[1, 2, 0], [0, 1, 2]] = 1
    v = brauer_value(F4, F4.array(P), 3, 3)
    assert v == 0  # 1 + w + w^2


@pytest.mark.parametrize("name,p", [("sing2x2", 2), ("M(2,2)", 2), ("M(2,2)", 3), ("T3", 2), ("S3", 3), ("C6", 2)])
def test_decomposition_and_cartan_square(name, p):
    ctx = MonoidContext(builtin(name))
    dm = ctx.decomposition(p)
    D = dm.D
    assert all(x >= 0 for row in D for x in row)
    assert linalg.rational_rank(D, len(D[0])) == len(D[0])
    assert ctx.cartan_square(p).ok


@pytest.mark.parametrize("name,p", [("M(2,2)", 2), ("T3", 3), ("Mp(2)", 2), ("S3", 2)])
def test_brauer_lift_is_virtual(name, p):
    M = builtin(name)
    ctx = MonoidContext(M)
    for j in range(len(ctx.brauer_table(p).rows)):
        vals, coeffs = brauer_lift(M, p, j, ctx)
        ordt = ctx.ordinary_table()
        recon = [sum((row[c] * k for row, k in zip(ordt.rows, coeffs)), CycInt(ctx.conductor)) for c in range(len(vals))]
        assert recon == vals


def test_projective_vanishing():
    M = full_matrix_monoid(1, 3)
    rep = projective_character_vanishing(M, 2)
    assert rep.hypothesis is False and rep.vanishes is False
    rep = projective_character_vanishing(builtin("C2"), 2)
    assert rep.hypothesis and rep.vanishes


def test_projective_characters_sum_to_regular():
    M = full_matrix_monoid(1, 3)
    ctx = MonoidContext(M)
    pc = ctx.projective_characters(2)
    dims = ctx.brauer_table(2).dims
    total = [sum((v[c] * d for v, d in zip(pc, dims)), CycInt(ctx.conductor)) for c in range(len(pc[0]))]
    reps = ctx.ordinary_table().reps
    regular = [sum(int(M.mul(r, x) == x) for x in range(M.size)) for r in reps]
    assert [int(v) for v in total] == regular


@pytest.mark.parametrize("name,p,expected", [("sing2x2", 3, True), ("M(2,2)", 5, True), ("M(2,2)", 2, False), ("T3", 5, True)])
def test_unitriangularity(name, p, expected):
    assert unitriangular_under_apex(MonoidContext(builtin(name)), p) is expected
