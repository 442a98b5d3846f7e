"""Finite monoids given by multiplication tables, and their combinatorics."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

ASSOC_FULL_LIMIT = 256
CLOSURE_BOUND = 5000


class MonoidError(ValueError):
    pass


class NotAssociative(MonoidError):
    def __init__(self, triple):
        self.triple = tuple(int(x) for x in triple)
        super().__init__(f"not associative {self.triple}")


class NoIdentity(MonoidError):
    def __init__(self):
        super().__init__("no identity element")


class ClosureTooLarge(MonoidError):
    pass


class FiniteMonoid:
    """A finite monoid on ``0..N-1``; ``table[a, b]`` is the product ``ab``.

    Derived structure (Green's relations, classes, ...) is computed lazily
    and cached on the instance; the table itself is read-only.
    """

    def __init__(self, table, identity: int, labels: Sequence[str] | None = None, name: str | None = None):
        t = np.array(table, dtype=np.int64)
        t.setflags(write=False)
        self.table = t
        self.identity = int(identity)
        self.labels = tuple(labels) if labels is not None else None
        self.name = name

    def __len__(self):
        return self.table.shape[0]

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def __repr__(self):
        return f"FiniteMonoid({self.name or '?'}, size={self.size})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def power(self, a: int, k: int) -> int:
        x = self.identity
        for _ in range(k):
            x = int(self.table[a, x])
        return x

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def table_bytes(self) -> bytes:
        return self.table.astype("<i4").tobytes() + self.identity.to_bytes(4, "little")

    # cached structure -------------------------------------------------
    @cached_property
    def idempotents(self) -> list[int]:
        d = self.table[np.arange(self.size), np.arange(self.size)]
        return [int(x) for x in np.flatnonzero(d == np.arange(self.size))]

    @cached_property
    def green(self) -> "GreenStructure":
        return green(self)

    @cached_property
    def omega(self) -> "OmegaData":
        return omega_data(self)

    @cached_property
    def classes(self) -> "ClassPartition":
        return generalized_classes(self)


def check_associative(table: np.ndarray, seed: int = 0) -> tuple[int, int, int] | None:
    n = table.shape[0]
    if n <= ASSOC_FULL_LIMIT:
        for a in range(n):
            left = table[table[a]]  # (ab)c for all b, c
            right = table[a][table]  # a(bc)
            bad = np.argwhere(left != right)
            if bad.size:
                b, c = bad[0]
                return a, int(b), int(c)
        return None
    rng = np.random.default_rng(seed)
    k = 10 * n * n
    a, b, c = (rng.integers(0, n, k) for _ in range(3))
    bad = np.flatnonzero(table[table[a, b], c] != table[a, table[b, c]])
    if bad.size:
        i = bad[0]
        return int(a[i]), int(b[i]), int(c[i])
    return None


def find_identity(table: np.ndarray) -> int | None:
    n = table.shape[0]
    ar = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar):
            return e
    return None


def from_table(table, identity_hint: int | None = None, labels=None, name=None, seed: int = 0) -> FiniteMonoid:
    """Validate a multiplication table and wrap it.

    Associativity is checked on every triple for up to 256 elements and on
    ``10 N^2`` seeded random triples beyond that.
    """
    t = np.array(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise MonoidError("table must be a nonempty square array")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise MonoidError("table entry out of range")
    bad = check_associative(t, seed)
    if bad is not None:
        raise NotAssociative(bad)
    ar = np.arange(n)
    if identity_hint is not None:
        e = int(identity_hint)
        if not (0 <= e < n and np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)):
            raise NoIdentity()
    else:
        e = find_identity(t)
        if e is None:
            raise NoIdentity()
    return FiniteMonoid(t, e, labels, name)


def closure_from_generators(
    generators: Iterable[Hashable],
    multiply: Callable[[Hashable, Hashable], Hashable],
    identity: Hashable,
    bound: int = CLOSURE_BOUND,
    label: Callable[[Hashable], str] | None = None,
    name: str | None = None,
) -> tuple[FiniteMonoid, list]:
    """Submonoid generated by the given elements, in breadth-first order.

    Index 0 is the identity, followed by the generators in order, then the
    remaining elements as they are discovered by right multiplication.
    Returns the monoid and the list of underlying elements.
    """
    gens = []
    for g in generators:
        if g not in gens:
            gens.append(g)
    elems = [identity]
    index = {identity: 0}
    for g in gens:
        if g not in index:
            index[g] = len(elems)
            elems.append(g)
    gidx = [index[g] for g in gens]
    right: list[list[int]] = []  # right[x][k] = x * gens[k]
    parent = [(-1, -1)] * len(elems)
    for k, gi in enumerate(gidx):
        if gi != 0 and parent[gi] == (-1, -1):
            parent[gi] = (0, k)
    i = 0
    while i < len(elems):
        x = elems[i]
        row = []
        for k, g in enumerate(gens):
            y = multiply(x, g)
            j = index.get(y)
            if j is None:
                if len(elems) >= bound:
                    raise ClosureTooLarge(f"closure exceeds bound {bound}")
                j = len(elems)
                index[y] = j
                elems.append(y)
                parent.append((i, k))
            elif parent[j] == (-1, -1) and j != 0:
                parent[j] = (i, k)
            row.append(j)
        right.append(row)
        i += 1
    n = len(elems)
    R = np.array(right, dtype=np.int64).reshape(n, len(gens))
    table = np.zeros((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    order = sorted(range(1, n), key=lambda j: _depth(parent, j))
    for y in order:
        par, k = parent[y]
        table[:, y] = R[table[:, par], k]
    labels = [label(x) for x in elems] if label else None
    return FiniteMonoid(table, 0, labels, name), elems


def _depth(parent, j):
    d = 0
    while j > 0:
        j = parent[j][0]
        d += 1
    return d


# ---------------------------------------------------------------- Green's relations


@dataclass
class GreenStructure:
    j_classes: list[tuple[int, ...]]
    l_classes: list[tuple[int, ...]]
    r_classes: list[tuple[int, ...]]
    j_of: np.ndarray
    l_of: np.ndarray
    r_of: np.ndarray
    j_leq: np.ndarray  # j_leq[a, b]: J-class a lies below J-class b
    regular: list[bool]
    idempotent_rep: list[int | None]

    @property
    def regular_classes(self) -> list[int]:
        return [i for i, r in enumerate(self.regular) if r]

    def h_class(self, m: int) -> tuple[int, ...]:
        l, r = self.l_of[m], self.r_of[m]
        return tuple(x for x in self.l_classes[l] if self.r_of[x] == r)


def _group_by_rows(B: np.ndarray) -> tuple[list[tuple[int, ...]], np.ndarray]:
    keys: dict[bytes, list[int]] = {}
    for m in range(B.shape[0]):
        keys.setdefault(np.packbits(B[m]).tobytes(), []).append(m)
    classes = sorted((tuple(v) for v in keys.values()), key=lambda c: c[0])
    of = np.empty(B.shape[0], dtype=np.int64)
    for i, c in enumerate(classes):
        of[list(c)] = i
    return classes, of


def green(M: FiniteMonoid) -> GreenStructure:
    n = M.size
    t = M.table
    Rb = np.zeros((n, n), dtype=bool)  # Rb[m, x]: x in mM
    Lb = np.zeros((n, n), dtype=bool)  # Lb[m, x]: x in Mm
    for m in range(n):
        Rb[m, t[m]] = True
        Lb[m, t[:, m]] = True
    Jb = (Rb.astype(np.int64) @ Lb.astype(np.int64)) > 0
    j_classes, j_of = _group_by_rows(Jb)
    l_classes, l_of = _group_by_rows(Lb)
    r_classes, r_of = _group_by_rows(Rb)
    ideals = np.array([Jb[c[0]] for c in j_classes])
    k = len(j_classes)
    j_leq = np.zeros((k, k), dtype=bool)
    for a in range(k):
        for b in range(k):
            j_leq[a, b] = not np.any(ideals[a] & ~ideals[b])
    idem = set(M.idempotents)
    regular, rep = [], []
    for c in j_classes:
        es = [x for x in c if x in idem]
        regular.append(bool(es))
        rep.append(es[0] if es else None)
    return GreenStructure(j_classes, l_classes, r_classes, j_of, l_of, r_of, j_leq, regular, rep)


def is_regular(M: FiniteMonoid) -> bool:
    return all(M.green.regular)


@dataclass
class MaxSubgroup:
    """The group of units of ``eMe``; ``monoid`` relabels it on 0..|G|-1."""

    e: int
    elements: tuple[int, ...]
    monoid: FiniteMonoid

    @property
    def order(self) -> int:
        return len(self.elements)


def max_subgroup(M: FiniteMonoid, e: int) -> MaxSubgroup:
    if M.mul(e, e) != e:
        raise MonoidError("not idempotent")
    G = M.green.h_class(e)
    sub = submonoid(M, G, identity=e, name=f"G_{e}")
    return MaxSubgroup(e, G, sub)


def submonoid(M: FiniteMonoid, elements: Sequence[int], identity: int | None = None, name=None) -> FiniteMonoid:
    """Restrict the table to a multiplicatively closed subset, relabelled in order."""
    elements = sorted(int(x) for x in elements)
    pos = {x: i for i, x in enumerate(elements)}
    sub = M.table[np.ix_(elements, elements)]
    try:
        t = np.vectorize(pos.__getitem__, otypes=[np.int64])(sub)
    except KeyError:
        raise MonoidError("subset is not closed")
    e = M.identity if identity is None else identity
    labels = [M.label(x) for x in elements]
    return FiniteMonoid(t, pos[e], labels, name)


# ---------------------------------------------------------------- powers


@dataclass
class OmegaData:
    index: np.ndarray
    period: np.ndarray
    omega: np.ndarray  # the idempotent power of m
    omega1: np.ndarray  # m times its idempotent power

    def exponent(self) -> int:
        """Least common multiple of all periods."""
        n = 1
        for k in self.period:
            n = n * int(k) // gcd(n, int(k))
        return n


def omega_data(M: FiniteMonoid) -> OmegaData:
    n = M.size
    idx = np.zeros(n, dtype=np.int64)
    per = np.zeros(n, dtype=np.int64)
    om = np.zeros(n, dtype=np.int64)
    om1 = np.zeros(n, dtype=np.int64)
    for m in range(n):
        seen = {}
        powers = []
        x = M.identity
        k = 0
        while x not in seen:
            seen[x] = k
            powers.append(x)
            x = int(M.table[m, x])
            k += 1
        i = seen[x]
        period = k - i
        r = period * max(1, -(-i // period))
        idx[m], per[m] = i, period
        om[m] = powers[r] if r < len(powers) else powers[i + (r - i) % period]
        om1[m] = M.table[m, om[m]]
    return OmegaData(idx, per, om, om1)


def p_part_split(k: int, p: int) -> tuple[int, int]:
    kp = 1
    while k % p == 0:
        k //= p
        kp *= p
    return kp, k


def p_prime_part(M: FiniteMonoid, m: int, p: int) -> int:
    """The p'-part of ``m^(omega+1)`` inside the cyclic group it generates."""
    od = M.omega
    g = int(od.omega1[m])
    k = int(od.period[m])
    kp, kq = p_part_split(k, p)
    # exponent a with a = 0 mod kp and a = 1 mod kq
    a = 0
    for t in range(k):
        if t % kp == 0 and t % kq == 1 % kq:
            a = t
            break
    if a == 0:
        a = k
    x = int(od.omega[m])
    for _ in range(a):
        x = M.mul(g, x)
    return x


def p_prime_parts(M: FiniteMonoid, p: int) -> np.ndarray:
    return np.array([p_prime_part(M, m, p) for m in range(M.size)], dtype=np.int64)


# ---------------------------------------------------------------- generalized conjugacy


@dataclass
class ClassPartition:
    classes: list[tuple[int, ...]]
    class_of: np.ndarray
    period: list[int]

    @property
    def reps(self) -> list[int]:
        return [c[0] for c in self.classes]

    def __len__(self):
        return len(self.classes)

    def p_regular(self, p: int) -> list[int]:
        """Indices of classes whose elements have period prime to p."""
        return [i for i, k in enumerate(self.period) if k % p]


def generalized_classes(M: FiniteMonoid) -> ClassPartition:
    """Least equivalence with ``ab ~ ba`` and ``m ~ m^(omega+1)``, via union-find."""
    n = M.size
    par = list(range(n))

    def find(x):
        while par[x] != x:
            par[x] = par[par[x]]
            x = par[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                par[rb] = ra
            else:
                par[ra] = rb

    t = M.table
    for a in range(n):
        for b in range(a + 1, n):
            union(int(t[a, b]), int(t[b, a]))
    om1 = M.omega.omega1
    for m in range(n):
        union(m, int(om1[m]))
    groups: dict[int, list[int]] = {}
    for m in range(n):
        groups.setdefault(find(m), []).append(m)
    classes = sorted((tuple(v) for v in groups.values()), key=lambda c: c[0])
    of = np.empty(n, dtype=np.int64)
    for i, c in enumerate(classes):
        of[list(c)] = i
    per = [int(M.omega.period[c[0]]) for c in classes]
    return ClassPartition(classes, of, per)


# ---------------------------------------------------------------- stabilizers and ideals


def left_stabilizer(M: FiniteMonoid, a: int) -> list[int]:
    """Elements m with ``m a == a``."""
    return [int(x) for x in np.flatnonzero(M.table[:, a] == a)]


def right_stabilizer(M: FiniteMonoid, a: int) -> list[int]:
    return [int(x) for x in np.flatnonzero(M.table[a, :] == a)]


def stabilizer_monoid(M: FiniteMonoid, a: int, side: str = "left") -> FiniteMonoid:
    elems = left_stabilizer(M, a) if side == "left" else right_stabilizer(M, a)
    return submonoid(M, elems, name=f"Stab_{side}({a})")


def minimal_ideal(M: FiniteMonoid) -> tuple[int, ...]:
    g = M.green
    k = len(g.j_classes)
    for a in range(k):
        if all(g.j_leq[a, b] for b in range(k)):
            return g.j_classes[a]
    raise MonoidError("no minimal ideal")  # unreachable for finite monoids


def minimal_ideal_group(M: FiniteMonoid) -> MaxSubgroup:
    I = minimal_ideal(M)
    e = next(x for x in I if M.mul(x, x) == x)
    return max_subgroup(M, e)


def is_aperiodic(M: FiniteMonoid) -> bool:
    return bool(np.all(M.omega.period == 1))


def is_p_prime_monoid(M: FiniteMonoid, p: int) -> bool:
    """True when no maximal subgroup has order divisible by p."""
    g = M.green
    for e in g.idempotent_rep:
        if e is not None and len(g.h_class(e)) % p == 0:
            return False
    return True


def principal_series(M: FiniteMonoid) -> list[tuple[int, ...]]:
    """Chain of ideals obtained by adjoining one minimal remaining J-class at a time."""
    g = M.green
    k = len(g.j_classes)
    done: list[int] = []
    left = set(range(k))
    out = []
    current: list[int] = []
    while left:
        cands = [a for a in left if all(b in done for b in range(k) if b != a and g.j_leq[b, a])]
        a = min(cands, key=lambda c: g.j_classes[c][0])
        done.append(a)
        left.discard(a)
        current = sorted(current + list(g.j_classes[a]))
        out.append(tuple(current))
    return out


def j_class_order(M: FiniteMonoid) -> list[int]:
    """J-class indices in the order the principal series adjoins them."""
    series = principal_series(M)
    out, prev = [], set()
    for ideal in series:
        new = set(ideal) - prev
        out.append(int(M.green.j_of[min(new)]))
        prev = set(ideal)
    return out

