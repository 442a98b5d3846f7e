"""Exact linear algebra over the integers and the rationals.

Matrices are plain lists of lists of Python ints (or Fractions). Shapes
with a zero dimension are allowed; functions that need the column count
of an empty matrix take it as an explicit argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import factorint


class LinAlgError(ValueError):
    pass


class UnderdeterminedSystem(LinAlgError):
    pass


Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def shape(A: Sequence[Sequence], ncols: int | None = None) -> tuple[int, int]:
    m = len(A)
    if m:
        return m, len(A[0])
    return 0, (ncols or 0)


def matmul(A: Sequence[Sequence], B: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Product of two matrices; ``ncols`` is the column count of B when B is empty."""
    n = len(B[0]) if B else (ncols or 0)
    out = []
    for row in A:
        acc = [0] * n
        for k, a in enumerate(row):
            if a:
                bk = B[k]
                for j in range(n):
                    acc[j] += a * bk[j]
        out.append(acc)
    return out


def transpose(A: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    m, n = shape(A, ncols)
    return [[A[i][j] for i in range(m)] for j in range(n)]


@dataclass(frozen=True)
class SmithForm:
    """``left * A * right == diag`` with ``left`` and ``right`` unimodular."""

    diag: tuple[int, ...]
    left: Matrix
    right: Matrix
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diag if x)

    def diag_matrix(self) -> Matrix:
        D = [[0] * self.cols for _ in range(self.rows)]
        for i, x in enumerate(self.diag):
            D[i][i] = x
        return D


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form with unimodular transforms.

    The pivot at each stage is the nonzero entry of least absolute value in
    the trailing submatrix, ties broken by lowest (row, col). The output
    diagonal is nonnegative with each entry dividing the next.
    """
    m, n = shape(A, ncols)
    D = [[int(x) for x in row] for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in D:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        if c:
            rd, rs = D[dst], D[src]
            for k in range(n):
                rd[k] += c * rs[k]
            ud, us = U[dst], U[src]
            for k in range(m):
                ud[k] += c * us[k]

    def add_col(dst, src, c):
        if c:
            for row in D:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = D[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            piv = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // piv))
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // piv))
                    if D[t][j]:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    diag = tuple(D[i][i] for i in range(min(m, n)))
    return SmithForm(diag, U, V, m, n)


def hermite_basis(vectors: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Row Hermite normal form of the lattice spanned by ``vectors``.

    Returns a basis in row echelon form with positive pivots and entries
    above each pivot reduced into ``[0, pivot)``.
    """
    basis: dict[int, list[int]] = {}
    for v in vectors:
        v = [int(x) for x in v]
        for c in range(ncols):
            if not v[c]:
                continue
            if c not in basis:
                if v[c] < 0:
                    v = [-x for x in v]
                basis[c] = v
                v = None
                break
            b = basis[c]
            a, bb = v[c], b[c]
            # extended gcd combine
            g, x, y = _xgcd(bb, a)
            new_b = [x * bi + y * vi for bi, vi in zip(b, v)]
            va, vb = a // g, bb // g
            v = [vb * vi - va * bi for bi, vi in zip(b, v)]
            if new_b[c] < 0:
                new_b = [-t for t in new_b]
            basis[c] = new_b
        # v reduced to zero or inserted
    cols = sorted(basis)
    rows = [basis[c] for c in cols]
    for k, c in enumerate(cols):
        piv = rows[k][c]
        for i in range(k):
            q = rows[i][c] // piv
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[k])]
    return rows


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def kernel_saturated(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Rows form a basis of the integer kernel ``{x in Z^n : A x = 0}``.

    The basis comes from the right transform of the Smith form, so it spans
    the whole (saturated) kernel lattice, then is put in Hermite form.
    """
    m, n = shape(A, ncols)
    if m == 0:
        return identity(n)
    snf = smith_normal_form(A, n)
    r = snf.rank
    vecs = [[snf.right[i][j] for i in range(n)] for j in range(r, n)]
    return hermite_basis(vecs, n)


def prime_factors(x: int) -> set[int]:
    x = abs(int(x))
    if x <= 1:
        return set()
    return set(factorint(x))


def torsion_primes(A: Sequence[Sequence[int]], ncols: int | None = None) -> set[int]:
    """Primes dividing the order of the torsion subgroup of ``coker A``."""
    out: set[int] = set()
    for x in smith_normal_form(A, ncols).diag:
        out |= prime_factors(x)
    return out


def integer_rank(A: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    return rational_rank(A, ncols)


def rref_fraction(A: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    m, n = shape(A, ncols)
    R = [[Fraction(x) for x in row] for row in A]
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        k = next((i for i in range(r, m) if R[i][c]), None)
        if k is None:
            continue
        R[r], R[k] = R[k], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rational_rank(A: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref_fraction(A, ncols)[1])


def solve_rational(A: Sequence[Sequence], b: Sequence, ncols: int | None = None) -> list[Fraction] | None:
    """Unique rational solution of ``A x = b``.

    Returns None when the system is inconsistent and raises
    UnderdeterminedSystem when ``A`` lacks full column rank.
    """
    m, n = shape(A, ncols)
    if len(b) != m:
        raise LinAlgError("right-hand side has wrong length")
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    R, piv = rref_fraction(aug, n + 1)
    if n in piv:
        return None
    if len(piv) < n:
        raise UnderdeterminedSystem("underdetermined")
    return [R[i][n] for i in range(n)]


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Fraction-free Bareiss determinant of a square integer matrix."""
    n = len(A)
    if n == 0:
        return 1
    M = [[int(x) for x in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def lattice_coordinates(basis: Sequence[Sequence[int]], vectors: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Integer coordinates of each vector in the given lattice basis.

    Raises LinAlgError if some vector is not in the lattice.
    """
    if not vectors:
        return []
    if not basis:
        if any(any(v) for v in vectors):
            raise LinAlgError("vector outside lattice")
        return [[] for _ in vectors]
    BT = transpose(basis, ncols)
    k = len(basis)
    out = []
    for v in vectors:
        x = solve_rational(BT, list(v), k)
        if x is None or any(t.denominator != 1 for t in x):
            raise LinAlgError("vector outside lattice")
        out.append([int(t) for t in x])
    return out
