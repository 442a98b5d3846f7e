"""Reference values for the self-test, compared up to relabelling of simples."""

from __future__ import annotations

import itertools
from typing import Callable

from . import linalg
from .builders import builtin
from .characters import DEFAULT_SEED, MonoidContext
from .integral import sandwich, regular_idempotents


def simultaneous_perm(A, B) -> tuple[int, ...] | None:
    """A permutation s with A[s[i]][s[j]] == B[i][j], or None."""
    n = len(A)
    if n != len(B):
        return None
    diag_a = sorted(A[i][i] for i in range(n))
    if diag_a != sorted(B[i][i] for i in range(n)):
        return None
    for s in itertools.permutations(range(n)):
        if all(A[s[i]][s[j]] == B[i][j] for i in range(n) for j in range(n)):
            return s
    return None


def independent_perm(A, B) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Row and column permutations (r, c) with A[r[i]][c[j]] == B[i][j], or None."""
    if len(A) != len(B) or (A and len(A[0]) != len(B[0])):
        return None
    if not A:
        return (), ()
    m = len(A[0])
    for c in itertools.permutations(range(m)):
        rows = [tuple(row[c[j]] for j in range(m)) for row in A]
        target = [tuple(r) for r in B]
        used = [False] * len(rows)
        r = []
        for t in target:
            k = next((k for k in range(len(rows)) if not used[k] and rows[k] == t), None)
            if k is None:
                break
            used[k] = True
            r.append(k)
        else:
            return tuple(r), c
    return None


SING_D = [[1, 0, 1], [0, 1, 0], [0, 0, 1]]
SING_C = [[1, 0, 1], [0, 1, 0], [1, 0, 2]]
M22_D = [[1, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1]]
M22_C = [[3, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1]]


def _arrow_shape(arrows) -> tuple:
    """Loops, 2-cycles and isolated vertices of an arrow-count matrix."""
    n = len(arrows)
    loops = sum(arrows[i][i] for i in range(n))
    two_cycles = sum(1 for i in range(n) for j in range(i + 1, n) if arrows[i][j] == 1 and arrows[j][i] == 1)
    isolated = sum(1 for i in range(n) if not any(arrows[i]) and not any(arrows[k][i] for k in range(n)))
    total = sum(map(sum, arrows))
    return loops, two_cycles, isolated, total


def _sing2x2() -> list[tuple[str, bool, str]]:
    ctx = MonoidContext(builtin("sing2x2"), DEFAULT_SEED)
    M = ctx.M
    out = []
    e = [x for x in regular_idempotents(M) if len(M.green.j_classes[M.green.j_of[x]]) == 9][0]
    sd = sandwich(M, e)
    snf = list(linalg.smith_normal_form(sd.phi, len(sd.L)).diag)
    out.append(("sing2x2 sandwich SNF", snf == [1, 1, 2], str(snf)))
    sm = sorted(ctx.primes.strongly_modular)
    out.append(("sing2x2 strongly modular primes", sm == [2], str(sm)))
    D = ctx.decomposition(2).D
    pd = independent_perm(D, SING_D)
    out.append(("sing2x2 decomposition matrix", pd is not None, f"perm {pd}"))
    C = ctx.algebra(2).cartan.C
    pc = simultaneous_perm(C, SING_C)
    out.append(("sing2x2 Cartan matrix over F2", pc is not None, f"perm {pc}"))
    shape = _arrow_shape(ctx.algebra(2).quiver.arrows)
    out.append(("sing2x2 quiver", shape == (0, 1, 1, 2), f"loops, 2-cycles, isolated, arrows = {shape}"))
    C7 = MonoidContext(M, DEFAULT_SEED).algebra(7).cartan.C
    out.append(("sing2x2 Cartan matrix over F7", C7 == linalg.identity(3), str(C7)))
    return out


def _m22() -> list[tuple[str, bool, str]]:
    ctx = MonoidContext(builtin("M(2,2)"), DEFAULT_SEED)
    out = []
    nc, nr = len(ctx.M.classes), len(ctx.p_regular_classes(2))
    out.append(("M(2,2) class counts", (nc, nr) == (5, 4), f"{nc} classes, {nr} 2-regular"))
    pd = independent_perm(ctx.decomposition(2).D, M22_D)
    out.append(("M(2,2) decomposition matrix", pd is not None, f"perm {pd}"))
    cd = ctx.algebra(2).cartan
    pc = simultaneous_perm(cd.C, M22_C)
    out.append(("M(2,2) Cartan matrix over F2", pc is not None and cd.det == 2, f"perm {pc}, det {cd.det}"))
    shape = _arrow_shape(ctx.algebra(2).quiver.arrows)
    out.append(("M(2,2) quiver", shape == (1, 1, 2, 3), f"loops, 2-cycles, isolated, arrows = {shape}"))
    return out


def _mp() -> list[tuple[str, bool, str]]:
    out = []
    for p in (2, 3):
        ctx = MonoidContext(builtin(f"Mp({p})"), DEFAULT_SEED)
        C = ctx.algebra(ctx.ell).cartan.C
        ss = C == linalg.identity(len(C))
        n_simple = len(ctx.algebra(p).simples)
        n_reg = len(ctx.p_regular_classes(p))
        shape = _arrow_shape(ctx.algebra(p).quiver.arrows)
        out.append((f"Mp({p}) semisimple at nonmodular prime {ctx.ell}", ss, str(C)))
        out.append((f"Mp({p}) simples match {p}-regular classes", n_simple == n_reg, f"{n_simple} vs {n_reg}"))
        out.append((f"Mp({p}) quiver", n_simple == 3 and shape[:2] == (1, 1), f"loops, 2-cycles, isolated, arrows = {shape}"))
    return out


def _singular_quiver() -> list[tuple[str, bool, str]]:
    ctx = MonoidContext(builtin("quiverA:[[1,1],[1,1]]"), DEFAULT_SEED)
    dets = {p: ctx.algebra(p).cartan.det for p in sorted({2, 3, 5, ctx.ell})}
    return [("quiver monoid with singular Cartan matrix", all(d == 0 for d in dets.values()), str(dets))]


CASES: list[Callable[[], list[tuple[str, bool, str]]]] = [_sing2x2, _m22, _mp, _singular_quiver]


def run_selftest() -> list[tuple[str, bool, str]]:
    results = []
    for case in CASES:
        results.extend(case())
    return results
