"""Brauer characters, ordinary character tables and decomposition matrices.

Characteristic-zero data is computed over a nonmodular prime field F_l
that contains all the roots of unity needed; its Brauer table serves as the
ordinary table. All character values live in Z[zeta_n] for the exponent n
of the monoid, and eigenvalues are lifted through the discrete logarithm
with respect to the field's fixed generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import gf, linalg
from .algebra import ModularAlgebra, modular_algebra, FieldChoice
from .cyclotomic import CycInt
from .gf import GF, FieldError, make_field
from .integral import choose_nonmodular_prime, integral_radical, prime_report
from .monoid import FiniteMonoid, MonoidError, is_p_prime_monoid, left_stabilizer, p_part_split, p_prime_part, submonoid

DEFAULT_SEED = 20240607


class CharacterError(MonoidError):
    pass


def brauer_value(F: GF, A: np.ndarray, order: int, n: int) -> CycInt:
    """Lift of the eigenvalues of ``A`` (roots of unity of order dividing ``order``) into Z[zeta_n]."""
    dim = A.shape[0]
    h = F.root_of_unity(order)
    total = CycInt(n)
    found = 0
    lam = 1
    for j in range(order):
        mult = gf.eigen_multiplicity(F, A, lam)
        if mult:
            total = total + CycInt.zeta(n, j * (n // order)) * mult
            found += mult
        lam = F.smul(lam, h)
    if found + gf.eigen_multiplicity(F, A, 0) != dim:
        raise FieldError("field lacks required roots of unity")
    return total


@dataclass
class CharTable:
    kind: str  # "brauer" or "ordinary"
    prime: int  # characteristic of the field used
    conductor: int
    classes: list[int]  # indices into the generalized class partition
    reps: list[int]
    labels: list[str]
    dims: list[int]
    rows: list[list[CycInt]]

    def rational_matrix(self) -> list[list[int]]:
        """Rows expanded over Q: each value becomes its multiplication matrix."""
        out = []
        deg = len(CycInt(self.conductor, [0]).c)
        for row in self.rows:
            blocks = [v.mult_matrix() for v in row]
            for r in range(deg):
                out.append([blocks[c][r][s] for c in range(len(row)) for s in range(deg)])
        return out

    def rows_independent(self) -> bool:
        """Linear independence of the rows over the cyclotomic field."""
        Rm = self.rational_matrix()
        deg = len(CycInt(self.conductor, [0]).c)
        return linalg.rational_rank(Rm, len(self.reps) * deg) == len(self.rows) * deg


def brauer_character(S, M: FiniteMonoid, p: int, reps: list[int], n: int) -> list[CycInt]:
    _, order = p_part_split(n, p)
    return [brauer_value(S.F, S.act(m), order, n) for m in reps]


def _flatten_solve(basis_rows: list[list[CycInt]], target: list[CycInt]) -> list[Fraction] | None:
    """Rational coefficients c with sum c_j basis_j == target, columnwise."""
    r = len(basis_rows)
    A, b = [], []
    for c in range(len(target)):
        for t in range(len(target[c].c)):
            A.append([basis_rows[j][c].c[t] for j in range(r)])
            b.append(target[c].c[t])
    return linalg.solve_rational(A, b, r)


@dataclass
class DecompositionMatrix:
    p: int
    D: list[list[int]]  # rows: ordinary characters, columns: Brauer characters
    row_labels: list[str]
    col_labels: list[str]


@dataclass
class CartanSquareCheck:
    p: int
    ok: bool
    C_k: list[list[int]]
    DtCD: list[list[int]]
    det_k: int
    det_F: int


class MonoidContext:
    """Caches every per-monoid computation shared by the engines and reports."""

    def __init__(self, M: FiniteMonoid, seed: int = DEFAULT_SEED):
        self.M = M
        self.seed = seed
        self._alg: dict[int, tuple[ModularAlgebra, FieldChoice]] = {}
        self._brauer: dict[int, CharTable] = {}
        self._decomp: dict[int, DecompositionMatrix] = {}

    @property
    def conductor(self) -> int:
        return self.M.omega.exponent()

    @cached_property
    def radical(self):
        return integral_radical(self.M)

    @cached_property
    def primes(self):
        return prime_report(self.M, self.radical)

    @cached_property
    def ell(self) -> int:
        return choose_nonmodular_prime(self.M, self.primes)

    def algebra(self, p: int) -> ModularAlgebra:
        return self.algebra_and_field(p)[0]

    def algebra_and_field(self, p: int) -> tuple[ModularAlgebra, FieldChoice]:
        if p not in self._alg:
            self._alg[p] = modular_algebra(self.M, p, self.seed)
        return self._alg[p]

    def p_regular_classes(self, p: int) -> list[int]:
        return self.M.classes.p_regular(p)

    def brauer_table(self, p: int) -> CharTable:
        if p not in self._brauer:
            A, fc = self.algebra_and_field(p)
            E = make_field(p, fc.bound_degree)
            cls = self.M.classes
            idx = list(range(len(cls))) if p == self.ell else cls.p_regular(p)
            reps = [cls.reps[i] for i in idx]
            rows = [brauer_character(S.extend(E), self.M, p, reps, self.conductor) for S in A.simples]
            kind = "ordinary" if p == self.ell else "brauer"
            if len(rows) != len(idx):
                raise CharacterError("labels mismatch: simple count differs from class count")
            self._brauer[p] = CharTable(kind, p, self.conductor, idx, reps, A.labels, A.dims, rows)
        return self._brauer[p]

    def ordinary_table(self) -> CharTable:
        t = self.brauer_table(self.ell)
        return t

    def decomposition(self, p: int) -> DecompositionMatrix:
        if p in self._decomp:
            return self._decomp[p]
        ordt = self.ordinary_table()
        br = self.brauer_table(p)
        pos = {c: i for i, c in enumerate(ordt.classes)}
        D = []
        for chi in ordt.rows:
            target = [chi[pos[c]] for c in br.classes]
            x = _flatten_solve(br.rows, target)
            if x is None or any(v.denominator != 1 for v in x):
                raise CharacterError("non-integral solution")
            row = [int(v) for v in x]
            if any(v < 0 for v in row):
                raise CharacterError("negative decomposition number")
            D.append(row)
        dm = DecompositionMatrix(p, D, ordt.labels, br.labels)
        self._decomp[p] = dm
        return dm

    def cartan_square(self, p: int) -> CartanSquareCheck:
        Ck = self.algebra(p).cartan.C
        CF = self.algebra(self.ell).cartan.C
        D = self.decomposition(p).D
        Dt = linalg.transpose(D, len(Ck))
        rhs = linalg.matmul(linalg.matmul(Dt, CF), D, len(Ck))
        return CartanSquareCheck(p, rhs == Ck, Ck, rhs, linalg.determinant(Ck), linalg.determinant(CF))

    def brauer_lift(self, p: int, j: int) -> list[CycInt]:
        """Class function ``m -> theta_j(p'-part of m^(omega+1))`` on all classes."""
        br = self.brauer_table(p)
        cls = self.M.classes
        col = {c: i for i, c in enumerate(br.classes)}
        out = []
        for rep in cls.reps:
            c = int(cls.class_of[p_prime_part(self.M, rep, p)])
            out.append(br.rows[j][col[c]])
        return out

    def virtual_coefficients(self, values: list[CycInt]) -> list[int]:
        """Integer coordinates of a class function in the ordinary characters."""
        x = _flatten_solve(self.ordinary_table().rows, values)
        if x is None or any(v.denominator != 1 for v in x):
            raise CharacterError("not a virtual character")
        return [int(v) for v in x]

    def projective_characters(self, p: int) -> list[list[CycInt]]:
        """Characters of the lifted indecomposable projectives, one per Brauer character."""
        CF = self.algebra(self.ell).cartan.C
        D = self.decomposition(p).D
        W = linalg.matmul(CF, D, len(D[0]) if D else 0)
        ordt = self.ordinary_table()
        out = []
        for j in range(len(D[0])):
            vals = []
            for c in range(len(ordt.classes)):
                v = CycInt(self.conductor)
                for k, chi in enumerate(ordt.rows):
                    v = v + chi[c] * W[k][j]
                vals.append(v)
            out.append(vals)
        return out


def ordinary_character_table(M: FiniteMonoid, ctx: MonoidContext | None = None) -> CharTable:
    return (ctx or MonoidContext(M)).ordinary_table()


def brauer_table(M: FiniteMonoid, p: int, ctx: MonoidContext | None = None) -> CharTable:
    return (ctx or MonoidContext(M)).brauer_table(p)


def decomposition_matrix(M: FiniteMonoid, p: int, ctx: MonoidContext | None = None) -> DecompositionMatrix:
    return (ctx or MonoidContext(M)).decomposition(p)


def verify_cartan_square(M: FiniteMonoid, p: int, ctx: MonoidContext | None = None) -> CartanSquareCheck:
    return (ctx or MonoidContext(M)).cartan_square(p)


def brauer_lift(M: FiniteMonoid, p: int, j: int, ctx: MonoidContext | None = None) -> tuple[list[CycInt], list[int]]:
    """The lifted class function and its integer coordinates in the ordinary characters."""
    c = ctx or MonoidContext(M)
    vals = c.brauer_lift(p, j)
    return vals, c.virtual_coefficients(vals)


@dataclass
class VanishingReport:
    p: int
    hypothesis: bool  # every left stabilizer is a p'-monoid
    vanishes: bool
    offending: list[tuple[int, int, str]]  # (projective index, class rep, value)


def projective_character_vanishing(M: FiniteMonoid, p: int, ctx: MonoidContext | None = None) -> VanishingReport:
    c = ctx or MonoidContext(M)
    hyp = all(is_p_prime_monoid(submonoid(M, left_stabilizer(M, a)), p) for a in range(M.size))
    ordt = c.ordinary_table()
    preg = set(c.p_regular_classes(p))
    bad = []
    for j, vals in enumerate(c.projective_characters(p)):
        for k, cl in enumerate(ordt.classes):
            if cl not in preg and vals[k] != 0:
                bad.append((j, ordt.reps[k], str(vals[k])))
    return VanishingReport(p, hyp, not bad, bad)


def apex_positions(ctx: MonoidContext, p: int) -> list[int]:
    A = ctx.algebra(p)
    return [A.apex_of(S) for S in A.simples]


def unitriangular_under_apex(ctx: MonoidContext, p: int) -> bool:
    """D is square and unipotent block triangular for the apex order.

    Rows and columns sharing an apex must meet in a permutation matrix; any
    other nonzero entry must sit in a column whose apex is strictly above
    the row's apex.
    """
    M = ctx.M
    D = ctx.decomposition(p).D
    if not D or len(D) != len(D[0]):
        return False
    g = M.green
    ra = [g.j_of[e] for e in apex_positions(ctx, ctx.ell)]
    ca = [g.j_of[e] for e in apex_positions(ctx, p)]
    for i, row in enumerate(D):
        same = [j for j in range(len(row)) if ca[j] == ra[i]]
        if sorted(row[j] for j in same) != [0] * (len(same) - 1) + [1]:
            return False
        for j, v in enumerate(row):
            if v and ca[j] != ra[i] and not (g.j_leq[ra[i], ca[j]] and ra[i] != ca[j]):
                return False
    for j in range(len(D)):
        if sum(D[i][j] for i in range(len(D)) if ra[i] == ca[j]) != 1:
            return False
    return True
