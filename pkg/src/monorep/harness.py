"""Per-monoid verdicts on Cartan nonsingularity, and batch scans over families.

Claims come in two kinds. Proved claims are checked on every run and a
failure aborts with InvariantViolation, since it can only mean a bug.
Conjectural claims are evaluated and a failure is reported as a finding.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .builders import builtin, transformation_monoid
from .characters import DEFAULT_SEED, MonoidContext
from .monoid import (
    FiniteMonoid,
    MonoidError,
    is_aperiodic,
    is_p_prime_monoid,
    is_regular,
    left_stabilizer,
    max_subgroup,
    minimal_ideal_group,
    right_stabilizer,
    submonoid,
)

SIZE_BUDGET = 64


class InvariantViolation(MonoidError):
    """A proved statement failed on a concrete instance."""


CLAIMS = {
    "cartan-square": ("proved", "C(kM) equals D^T C(FM) D"),
    "regular-nonsingular": ("proved", "regular monoids have nonsingular Cartan matrices over every field"),
    "regular-det-product": ("proved", "for regular monoids det C(kM) is the product of det C(kG_e) over regular J-classes"),
    "good-characteristic": ("proved", "if p divides no maximal subgroup order then det C(kM) equals det C(FM)"),
    "p-prime-stabilizers": ("proved", "left or right stabilizers all p'-monoids and det C(FM) nonzero imply det C(kM) nonzero"),
    "aperiodic-stabilizers": ("proved", "left or right stabilizers all aperiodic and det C(FM) nonzero imply det C(kM) nonzero"),
    "min-ideal-group-p-prime": ("conjecture", "stabilizer minimal-ideal groups all p'-groups and det C(FM) nonzero imply det C(kM) nonzero"),
    "min-ideal-group-trivial": ("conjecture", "stabilizer minimal-ideal groups all trivial and det C(FM) nonzero imply det C(kM) nonzero"),
}


def table_hash(M: FiniteMonoid) -> str:
    return hashlib.sha256(M.table_bytes()).hexdigest()


@dataclass
class StabilizerFlags:
    aperiodic: bool
    p_prime: dict[int, bool]
    min_group_order: int


def _side_flags(M: FiniteMonoid, side: str, primes: list[int]) -> list[StabilizerFlags]:
    out = []
    for a in range(M.size):
        elems = left_stabilizer(M, a) if side == "left" else right_stabilizer(M, a)
        S = submonoid(M, elems)
        out.append(StabilizerFlags(is_aperiodic(S), {p: is_p_prime_monoid(S, p) for p in primes}, minimal_ideal_group(S).order))
    return out


@dataclass
class PrimeVerdict:
    p: int
    field_degree: int
    det_k: int
    nonsingular: bool
    cartan_square: bool
    group_dets: list[int]


@dataclass
class MonoidVerdict:
    name: str
    size: int
    hash: str
    is_regular: bool
    is_aperiodic: bool
    ell: int
    det_F: int
    modular: list[int]
    strongly_modular: list[int]
    left_aperiodic: bool
    right_aperiodic: bool
    left_p_prime: dict[int, bool]
    right_p_prime: dict[int, bool]
    left_min_group_orders: list[int]
    right_min_group_orders: list[int]
    primes: list[PrimeVerdict]
    applicable: dict[str, list[int]] = field(default_factory=dict)  # claim -> primes where the hypothesis holds
    findings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["left_p_prime"] = {str(k): v for k, v in self.left_p_prime.items()}
        d["right_p_prime"] = {str(k): v for k, v in self.right_p_prime.items()}
        return d


def analyze(M: FiniteMonoid, primes: Iterable[int], seed: int = DEFAULT_SEED, ctx: MonoidContext | None = None) -> MonoidVerdict:
    """Evaluate every registered claim on M at the given primes."""
    primes = sorted(set(int(p) for p in primes))
    ctx = ctx or MonoidContext(M, seed)
    ell = ctx.ell
    CF = ctx.algebra(ell).cartan
    det_F = CF.det
    pr = ctx.primes
    g = M.green
    reg = is_regular(M)
    left = _side_flags(M, "left", primes)
    right = _side_flags(M, "right", primes)
    name = M.name or table_hash(M)[:12]

    def fail(claim, p, detail):
        raise InvariantViolation(f"{claim} violated for {name} at p={p}: {detail}")

    group_orders = [len(g.h_class(e)) for e in g.idempotent_rep if e is not None]
    verdicts = []
    applicable: dict[str, list[int]] = {k: [] for k in CLAIMS}
    findings = []
    for p in primes:
        A, fc = ctx.algebra_and_field(p)
        det_k = A.cartan.det
        sq = ctx.cartan_square(p)
        if not sq.ok:
            fail("cartan-square", p, f"{sq.C_k} != {sq.DtCD}")
        applicable["cartan-square"].append(p)
        gdets: list[int] = []
        if reg:
            applicable["regular-nonsingular"].append(p)
            applicable["regular-det-product"].append(p)
            if det_k == 0:
                fail("regular-nonsingular", p, "det C(kM) = 0")
            for e in g.idempotent_rep:
                if e is not None:
                    G = max_subgroup(M, e).monoid
                    gdets.append(MonoidContext(G, seed).algebra(p).cartan.det)
            if det_k != int(np.prod(gdets)):
                fail("regular-det-product", p, f"{det_k} != prod {gdets}")
        if all(o % p for o in group_orders):
            applicable["good-characteristic"].append(p)
            if det_k != det_F:
                fail("good-characteristic", p, f"{det_k} != {det_F}")
        stab_pp = all(f.p_prime[p] for f in left) or all(f.p_prime[p] for f in right)
        stab_ap = all(f.aperiodic for f in left) or all(f.aperiodic for f in right)
        if det_F != 0:
            if stab_pp:
                applicable["p-prime-stabilizers"].append(p)
                if det_k == 0:
                    fail("p-prime-stabilizers", p, "det C(kM) = 0")
            if stab_ap:
                applicable["aperiodic-stabilizers"].append(p)
                if det_k == 0:
                    fail("aperiodic-stabilizers", p, "det C(kM) = 0")
            mg_pp = all(f.min_group_order % p for f in left) or all(f.min_group_order % p for f in right)
            mg_triv = all(f.min_group_order == 1 for f in left) or all(f.min_group_order == 1 for f in right)
            if mg_pp:
                applicable["min-ideal-group-p-prime"].append(p)
                if det_k == 0:
                    findings.append(f"COUNTEREXAMPLE min-ideal-group-p-prime at p={p}: det C(FM)={det_F}, det C(kM)=0")
            if mg_triv:
                applicable["min-ideal-group-trivial"].append(p)
                if det_k == 0:
                    findings.append(f"COUNTEREXAMPLE min-ideal-group-trivial at p={p}: det C(FM)={det_F}, det C(kM)=0")
        verdicts.append(PrimeVerdict(p, fc.degree, det_k, det_k != 0, sq.ok, gdets))
    return MonoidVerdict(
        name=name,
        size=M.size,
        hash=table_hash(M),
        is_regular=reg,
        is_aperiodic=is_aperiodic(M),
        ell=ell,
        det_F=det_F,
        modular=sorted(pr.modular),
        strongly_modular=sorted(pr.strongly_modular),
        left_aperiodic=all(f.aperiodic for f in left),
        right_aperiodic=all(f.aperiodic for f in right),
        left_p_prime={p: all(f.p_prime[p] for f in left) for p in primes},
        right_p_prime={p: all(f.p_prime[p] for f in right) for p in primes},
        left_min_group_orders=sorted({f.min_group_order for f in left}),
        right_min_group_orders=sorted({f.min_group_order for f in right}),
        primes=verdicts,
        applicable=applicable,
        findings=findings,
    )


# ---------------------------------------------------------------- families


def enumerate_monoids(n: int) -> Iterator[FiniteMonoid]:
    """All monoids of order n with identity 0, by backtracking with associativity pruning.

    Yields one table per heuristic canonical form; isomorphic tables may
    still repeat, which only costs time.
    """
    if n < 1 or n > 5:
        raise MonoidError("exhaustive enumeration supported for 1 <= n <= 5")
    cells = [(a, b) for a in range(1, n) for b in range(1, n)]
    T = -np.ones((n, n), dtype=np.int64)
    T[0, :] = np.arange(n)
    T[:, 0] = np.arange(n)
    seen: set[str] = set()
    idx = np.arange(n)
    X, Y, Z = np.meshgrid(idx, idx, idx, indexing="ij")

    def consistent():
        # (xy)z == x(yz) wherever both sides are already defined
        xy, yz = T[X, Y], T[Y, Z]
        ok = (xy >= 0) & (yz >= 0)
        l = np.where(ok, T[np.maximum(xy, 0), Z], -1)
        r = np.where(ok, T[X, np.maximum(yz, 0)], -1)
        both = (l >= 0) & (r >= 0)
        return not np.any(both & (l != r))

    def rec(k):
        if k == len(cells):
            M = FiniteMonoid(T.copy(), 0)
            key = canonical_hash(M)
            if key not in seen:
                seen.add(key)
                M.name = f"order{n}#{len(seen)}"
                yield M
            return
        a, b = cells[k]
        for v in range(n):
            T[a, b] = v
            if consistent():
                yield from rec(k + 1)
        T[a, b] = -1

    yield from rec(0)


EXACT_CANON_LIMIT = 7


def _relabel(t: np.ndarray, order) -> bytes:
    order = list(order)
    pos = np.empty(len(order), dtype=np.int64)
    pos[order] = np.arange(len(order))
    return pos[t[np.ix_(order, order)]].astype("<i4").tobytes()


def canonical_hash(M: FiniteMonoid) -> str:
    """Hash of a relabelled table that is equal for isomorphic monoids.

    Exact (minimum over identity-fixing relabellings) up to order 7; above
    that, elements are sorted by structural invariants with ties by index,
    so isomorphic inputs may hash differently but distinct ones never collide.
    """
    t = M.table
    e = M.identity
    rest = [m for m in range(M.size) if m != e]
    if M.size <= EXACT_CANON_LIMIT:
        best = min(_relabel(t, [e, *perm]) for perm in itertools.permutations(rest))
        return hashlib.sha256(best).hexdigest()
    od = M.omega
    g = M.green
    key = lambda m: (
        int(od.index[m]),
        int(od.period[m]),
        len(g.j_classes[g.j_of[m]]),
        len(set(t[m].tolist())),
        len(set(t[:, m].tolist())),
        int(t[m, m] == m),
        m,
    )
    return hashlib.sha256(_relabel(t, [e, *sorted(rest, key=key)])).hexdigest()


def fingerprint(M: FiniteMonoid) -> tuple:
    od = M.omega
    g = M.green
    pairs = tuple(sorted(zip(od.index.tolist(), od.period.tolist())))
    profile = tuple(sorted((len(c), r) for c, r in zip(g.j_classes, g.regular)))
    return pairs, profile, canonical_hash(M)


def random_monoid(size: int, seed: int, attempts: int = 20000) -> FiniteMonoid | None:
    """A transformation monoid of the requested order from seeded random generators."""
    rng = random.Random(seed)
    for _ in range(attempts):
        deg = rng.choice([3, 4, 4, 5])
        k = rng.choice([1, 2, 2, 3])
        gens = [tuple(rng.randrange(deg) for _ in range(deg)) for _ in range(k)]
        try:
            M = transformation_monoid(deg, gens, name=None)
        except MonoidError:
            continue
        if M.size == size:
            M.name = f"random{size}@{seed}"
            return M
    return None


BUILTIN_FAMILY = ["sing2x2", "M(2,2)", "T2", "T3", "Mp(2)", "Mp(3)", "quiverA:[[1,1],[1,1]]", "quiverA:[[2]]", "quiverA:[[1,1],[0,1]]", "C2", "C6", "S3"]


def family_members(family: str, seed: int) -> Iterator[FiniteMonoid]:
    """Monoids of a named family: ``builtins``, ``order:<n>`` or ``random:<size>:<count>``."""
    if family == "builtins":
        for nm in BUILTIN_FAMILY:
            yield builtin(nm)
        return
    parts = family.split(":")
    if parts[0] == "order" and len(parts) == 2:
        yield from enumerate_monoids(int(parts[1]))
        return
    if parts[0] == "order<=" or family.startswith("order<="):
        top = int(family[len("order<="):])
        for n in range(1, top + 1):
            yield from enumerate_monoids(n)
        return
    if parts[0] == "random" and len(parts) == 3:
        size, count = int(parts[1]), int(parts[2])
        for s in range(count):
            M = random_monoid(size, seed + s)
            if M is not None:
                yield M
        return
    raise MonoidError(f"unknown family {family!r}")


def _verdict_record(args) -> dict:
    table, identity, name, primes, seed = args
    M = FiniteMonoid(table, identity, name=name)
    if M.size > SIZE_BUDGET:
        return {"name": name, "skipped": f"size {M.size} over budget"}
    try:
        return {"verdict": analyze(M, primes, seed).to_dict()}
    except InvariantViolation as exc:
        return {"name": name, "violation": str(exc)}


def scan(family: str, primes: Iterable[int], seed: int = DEFAULT_SEED, workers: int = 1) -> Iterator[dict]:
    """Verdict records for the deduplicated members of a family, in submission order."""
    primes = sorted(set(primes))
    seen: set = set()
    jobs = []
    for M in family_members(family, seed):
        fp = fingerprint(M)
        if fp in seen:
            continue
        seen.add(fp)
        jobs.append((M.table.copy(), M.identity, M.name, primes, seed))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(_verdict_record, jobs)
    else:
        for j in jobs:
            yield _verdict_record(j)


def records_to_jsonl(records: Iterable[dict]) -> Iterator[str]:
    for r in records:
        yield json.dumps(r, sort_keys=True)
