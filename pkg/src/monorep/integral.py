"""Integral invariants: sandwich maps, the integral radical and modular primes."""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy import isprime

from . import linalg
from .monoid import FiniteMonoid, MonoidError, max_subgroup

NONMODULAR_SEARCH_LIMIT = 10**6


@dataclass
class SandwichData:
    e: int
    L: tuple[int, ...]  # the L-class of e
    R: tuple[int, ...]  # the R-class of e
    G: tuple[int, ...]
    transversal: tuple[int, ...]  # orbit representatives of G acting on R
    rows: list[tuple[int, int]]  # (transversal element, group element) per row
    phi: list[list[int]]
    image_rank: int
    coker_torsion_primes: set[int]


def sandwich(M: FiniteMonoid, e: int) -> SandwichData:
    """Integer matrix of the sandwich map of the J-class of the idempotent ``e``.

    Rows are indexed by pairs ``(r, g)`` with ``r`` running over a
    transversal of the left action of the maximal subgroup on the R-class and
    ``g`` over the group; columns by the L-class. The entry is 1 exactly when
    ``r * l == g``.
    """
    if M.mul(e, e) != e:
        raise MonoidError("not idempotent")
    g = M.green
    L = g.l_classes[g.l_of[e]]
    R = g.r_classes[g.r_of[e]]
    G = max_subgroup(M, e).elements
    seen: set[int] = set()
    trans = []
    for r in R:
        # G acts on R from the left
        if r in seen:
            continue
        trans.append(r)
        seen |= {M.mul(x, r) for x in G}
    rows = [(r, x) for r in trans for x in G]
    phi = []
    for r, x in rows:
        phi.append([int(M.mul(r, l) == x) for l in L])
    rank = linalg.rational_rank(phi, len(L))
    tors = linalg.torsion_primes(phi, len(L))
    return SandwichData(e, L, R, G, tuple(trans), rows, phi, rank, tors)


def regular_idempotents(M: FiniteMonoid) -> list[int]:
    """Smallest idempotent of each regular J-class, in J-class order."""
    return [e for e in M.green.idempotent_rep if e is not None]


def algebra_product_int(M: FiniteMonoid, a, b) -> list[int]:
    """Product in the integral monoid algebra of coefficient vectors."""
    out = [0] * M.size
    t = M.table
    nzb = [(j, y) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if x:
            row = t[i]
            for j, y in nzb:
                out[row[j]] += x * y
    return out


def trace_form(M: FiniteMonoid) -> list[list[int]]:
    """``L[i][j]`` is the number of fixed points of ``m_i m_j`` acting on the left."""
    t = M.table
    n = M.size
    fix = [int((t[m] == range(n)).sum()) for m in range(n)]
    return [[fix[t[i, j]] for j in range(n)] for i in range(n)]


@dataclass
class IntegralRadical:
    L: list[list[int]]
    basis: list[list[int]]  # saturated basis of the radical lattice
    powers: list[list[list[int]]]  # powers[k-1] is a basis of the k-th power
    torsion: list[set[int]]  # torsion[k-1]: primes in the torsion of power k over power k+1

    @property
    def loewy_length(self) -> int:
        """Least n with the n-th power zero."""
        return len(self.powers) + 1 if self.powers else 1

    def ranks(self) -> list[int]:
        return [len(b) for b in self.powers]


def integral_radical(M: FiniteMonoid) -> IntegralRadical:
    """Kernel of the trace form on the integral algebra, and its powers.

    The radical is saturated (it is a kernel). Its powers are the integer
    spans of products and are deliberately not saturated, since the torsion
    of consecutive quotients is what detects modular primes.
    """
    n = M.size
    L = trace_form(M)
    J = linalg.kernel_saturated(L, n)
    powers: list[list[list[int]]] = []
    torsion: list[set[int]] = []
    cur = J
    while cur:
        powers.append(cur)
        prods = [algebra_product_int(M, a, b) for a in J for b in cur]
        nxt = linalg.hermite_basis(prods, n)
        coords = linalg.lattice_coordinates(cur, nxt, n)
        torsion.append(linalg.torsion_primes(coords, len(cur)) if coords else set())
        if len(nxt) == len(cur) and nxt == cur:
            raise MonoidError("radical power did not shrink")  # unreachable: the radical is nilpotent
        cur = nxt
    return IntegralRadical(L, J, powers, torsion)


@dataclass
class PrimeReport:
    group_order_primes: set[int]
    sandwich_torsion_primes: set[int]
    j_power_torsion_primes: set[int]
    torsion_by_power: dict[int, set[int]] = field(default_factory=dict)
    loewy_length_Q: int = 1

    @property
    def strongly_modular(self) -> set[int]:
        return self.group_order_primes | self.sandwich_torsion_primes

    @property
    def modular(self) -> set[int]:
        return self.strongly_modular | self.j_power_torsion_primes


def prime_report(M: FiniteMonoid, radical: IntegralRadical | None = None) -> PrimeReport:
    gp: set[int] = set()
    sp: set[int] = set()
    for e in regular_idempotents(M):
        sd = sandwich(M, e)
        gp |= linalg.prime_factors(len(sd.G))
        sp |= sd.coker_torsion_primes
    rad = radical if radical is not None else integral_radical(M)
    by_k = {k + 1: t for k, t in enumerate(rad.torsion) if t}
    jp: set[int] = set().union(*by_k.values()) if by_k else set()
    return PrimeReport(gp, sp, jp, by_k, rad.loewy_length)


def choose_nonmodular_prime(M: FiniteMonoid, report: PrimeReport | None = None) -> int:
    """Smallest nonmodular prime congruent to 1 modulo the exponent of the monoid."""
    rep = report if report is not None else prime_report(M)
    n = M.omega.exponent()
    bad = rep.modular
    ell = 1
    while ell <= NONMODULAR_SEARCH_LIMIT:
        ell += n
        if isprime(ell) and ell not in bad:
            return ell
    raise MonoidError("no nonmodular prime found below search limit")
