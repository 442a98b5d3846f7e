"""Standard families of finite monoids."""

from __future__ import annotations

import itertools
import re

import numpy as np
from sympy import factorint, isprime

from .gf import make_field
from .monoid import FiniteMonoid, MonoidError, closure_from_generators


def _prime_power(q: int) -> tuple[int, int]:
    f = factorint(q)
    if len(f) != 1:
        raise MonoidError(f"{q} is not a prime power")
    (p, d), = f.items()
    return p, d


def full_matrix_monoid(n: int, q: int) -> FiniteMonoid:
    """All n x n matrices over F_q under multiplication; the identity comes first."""
    p, d = _prime_power(q)
    F = make_field(p, d)
    size = q ** (n * n)
    if size > 5000:
        raise MonoidError("monoid too large")
    mats = list(itertools.product(range(q), repeat=n * n))
    ident = tuple(F.code((1,)) if i == j else 0 for i in range(n) for j in range(n))
    mats.remove(ident)
    mats.insert(0, ident)
    index = {m: i for i, m in enumerate(mats)}
    # products via the vectorised field arithmetic
    A = F.array(np.array(mats, dtype=np.int64).reshape(size, n, n))
    table = np.zeros((size, size), dtype=np.int64)
    codes_weights = q ** np.arange(n * n - 1, -1, -1)
    lex_to_index = np.empty(size, dtype=np.int64)
    for m, i in index.items():
        lex_to_index[int(np.dot(m, codes_weights))] = i
    for a in range(size):
        prod = F.matmul(np.broadcast_to(A[a], A.shape), A)
        codes = F.codes(prod).reshape(size, n * n)
        table[a] = lex_to_index[codes @ codes_weights]
    labels = ["[" + ";".join(",".join(str(m[i * n + j]) for j in range(n)) for i in range(n)) + "]" for m in mats]
    return FiniteMonoid(table, 0, labels, f"M({n},{q})")


def full_transformation_monoid(n: int) -> FiniteMonoid:
    """All self-maps of ``{0..n-1}``, composed right to left; the identity comes first."""
    maps = list(itertools.product(range(n), repeat=n))
    ident = tuple(range(n))
    maps.remove(ident)
    maps.insert(0, ident)
    index = {m: i for i, m in enumerate(maps)}
    table = np.array([[index[tuple(f[g[x]] for x in range(n))] for g in maps] for f in maps], dtype=np.int64)
    labels = ["".join(map(str, m)) for m in maps]
    return FiniteMonoid(table, 0, labels, f"T{n}")


def singular_plus_identity() -> FiniteMonoid:
    """Singular 2 x 2 matrices over F_2 together with the identity."""
    M = full_matrix_monoid(2, 2)
    keep = [0] + [i for i in range(M.size) if _det2(M.labels[i]) == 0]
    from .monoid import submonoid

    sub = submonoid(M, keep, identity=0, name="sing2x2")
    return sub


def _det2(label: str) -> int:
    rows = [list(map(int, r.split(","))) for r in label.strip("[]").split(";")]
    return (rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]) % 2


def mp_monoid(p: int) -> FiniteMonoid:
    """Cyclic group of order p adjoined to a Rees matrix semigroup with sandwich matrix J - I.

    Elements: ``x^a`` for ``0 <= a < p``, a zero ``z``, and pairs ``(i, j)``
    with ``0 <= i, j <= p``. Pairs multiply as ``(i,j)(k,l) = (i,l)`` when
    ``j != k`` and ``z`` otherwise; the group acts trivially on the rest.
    """
    pairs = [(i, j) for i in range(p + 1) for j in range(p + 1)]
    n = p + 1 + len(pairs)
    z = p
    table = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            if a < p and b < p:
                table[a, b] = (a + b) % p
            elif a < p:
                table[a, b] = b
            elif b < p:
                table[a, b] = a
            elif a == z or b == z:
                table[a, b] = z
            else:
                i, j = pairs[a - p - 1]
                k, l = pairs[b - p - 1]
                table[a, b] = z if j == k else p + 1 + pairs.index((i, l))
    labels = [f"x^{a}" for a in range(p)] + ["z"] + [f"({i},{j})" for i, j in pairs]
    return FiniteMonoid(table, 0, labels, f"Mp({p})")


def quiver_monoid(A) -> FiniteMonoid:
    """Monoid basis of the path algebra modulo paths of length two, plus 1 and 0.

    ``A`` is a square nonnegative integer matrix with positive diagonal;
    there are ``A[i][j] - [i == j]`` arrows from vertex j to vertex i.
    """
    A = [list(map(int, r)) for r in A]
    n = len(A)
    if n == 0 or any(len(r) != n for r in A):
        raise MonoidError("adjacency matrix must be square and nonempty")
    if any(A[i][i] < 1 for i in range(n)) or any(x < 0 for r in A for x in r):
        raise MonoidError("adjacency matrix needs a positive diagonal and nonnegative entries")
    arrows = []  # (target, source, k)
    for i in range(n):
        for j in range(n):
            for k in range(A[i][j] - (i == j)):
                arrows.append((i, j, k))
    size = 2 + n + len(arrows)
    one, z = 0, 1
    vert = lambda i: 2 + i
    arr = lambda t: 2 + n + t
    table = np.full((size, size), z, dtype=np.int64)
    table[one, :] = np.arange(size)
    table[:, one] = np.arange(size)
    for i in range(n):
        table[vert(i), vert(i)] = vert(i)
    for t, (tgt, src, _) in enumerate(arrows):
        table[vert(tgt), arr(t)] = arr(t)
        table[arr(t), vert(src)] = arr(t)
    labels = ["1", "z"] + [f"e{i}" for i in range(n)] + [f"a{tgt}{src}_{k}" for tgt, src, k in arrows]
    return FiniteMonoid(table, 0, labels, "quiverA:" + _matrix_text(A))


def _matrix_text(A) -> str:
    return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in A) + "]"


def cyclic_group(n: int) -> FiniteMonoid:
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteMonoid(table, 0, [f"g^{a}" for a in range(n)], f"C{n}")


def symmetric_group(n: int) -> FiniteMonoid:
    perms = list(itertools.permutations(range(n)))
    index = {m: i for i, m in enumerate(perms)}
    table = [[index[tuple(f[g[x]] for x in range(n))] for g in perms] for f in perms]
    return FiniteMonoid(table, 0, ["".join(map(str, m)) for m in perms], f"S{n}")


def transformation_monoid(degree: int, generators, name=None) -> FiniteMonoid:
    gens = [tuple(int(x) for x in g) for g in generators]
    for g in gens:
        if len(g) != degree or any(not 0 <= x < degree for x in g):
            raise MonoidError("transformation has wrong degree or image out of range")
    M, _ = closure_from_generators(
        gens, lambda f, g: tuple(f[g[x]] for x in range(degree)), tuple(range(degree)),
        label=lambda m: "".join(map(str, m)), name=name,
    )
    return M


def matrix_monoid(n: int, q: int, generators, name=None) -> FiniteMonoid:
    """Submonoid of M(n, q) generated by matrices given as nested lists of field codes."""
    p, d = _prime_power(q)
    F = make_field(p, d)

    def mul(a, b):
        A = F.array(np.array(a).reshape(n, n))
        B = F.array(np.array(b).reshape(n, n))
        return tuple(int(x) for x in F.codes(F.matmul(A, B)).ravel())

    gens = []
    for g in generators:
        flat = tuple(int(x) for row in g for x in row)
        if len(flat) != n * n or any(not 0 <= x < q for x in flat):
            raise MonoidError("matrix generator has wrong shape or entries")
        gens.append(flat)
    ident = tuple(int(i == j) for i in range(n) for j in range(n))
    M, _ = closure_from_generators(gens, mul, ident, name=name,
                                   label=lambda m: "[" + ";".join(",".join(map(str, m[i * n:(i + 1) * n])) for i in range(n)) + "]")
    return M


BUILTIN_HELP = "M(n,q), Tn, Sn, Cn, Mp(p), sing2x2, quiverA:[[..],..]"


def builtin(name: str) -> FiniteMonoid:
    """Resolve a builtin monoid name such as ``M(2,2)``, ``T3`` or ``quiverA:[[1,1],[1,1]]``."""
    s = name.strip()
    if s == "sing2x2":
        return singular_plus_identity()
    if m := re.fullmatch(r"M\((\d+),(\d+)\)", s):
        return full_matrix_monoid(int(m[1]), int(m[2]))
    if m := re.fullmatch(r"Mp\((\d+)\)", s):
        p = int(m[1])
        if not isprime(p):
            raise MonoidError(f"Mp needs a prime, got {p}")
        return mp_monoid(p)
    if m := re.fullmatch(r"T(\d+)", s):
        n = int(m[1])
        if not 1 <= n <= 5:
            raise MonoidError("Tn supported for 1 <= n <= 5")
        return full_transformation_monoid(n)
    if m := re.fullmatch(r"S(\d+)", s):
        n = int(m[1])
        if not 1 <= n <= 6:
            raise MonoidError("Sn supported for 1 <= n <= 6")
        return symmetric_group(n)
    if m := re.fullmatch(r"C(\d+)", s):
        n = int(m[1])
        if n < 1:
            raise MonoidError("Cn needs n >= 1")
        return cyclic_group(n)
    if s.startswith("quiverA:"):
        import json

        try:
            A = json.loads(s[len("quiverA:"):])
        except json.JSONDecodeError as exc:
            raise MonoidError(f"bad quiver matrix: {exc}")
        return quiver_monoid(A)
    raise MonoidError(f"unknown builtin {name!r}; known: {BUILTIN_HELP}")
