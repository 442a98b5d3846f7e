"""Finite fields GF(p^d) and dense linear algebra over them.

An element is a coefficient vector ``(c_0, ..., c_{d-1})`` over F_p with
respect to the power basis of ``F_p[x]/(f)``. Arrays of elements carry
that vector as a trailing axis of length ``d``, so a matrix is an int64
array of shape ``(rows, cols, d)``. Addition is entrywise mod p, which keeps
scatter-adds and sums cheap; multiplication contracts against a
precomputed reduction tensor.

Scalars in the public API are integer codes ``sum c_i p^i``. Ordering
("smallest polynomial", "smallest generator") is lexicographic on the
coefficient tuple read from the constant term upward.
"""

from __future__ import annotations

import itertools
import math
from functools import cached_property

import numpy as np
from sympy import factorint, isprime

FIELD_BOUND = 2**20


class FieldError(ValueError):
    pass


# ---------------------------------------------------------------- polynomials over F_p
# lists of coefficients, low degree first, no trailing zeros (zero poly is [])


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv = pow(f[-1], p - 2, p)
    while len(_trim(a)) - 1 >= df:
        c = a[-1] * inv % p
        s = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[s + i] = (a[s + i] - c * fi) % p
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _trim(_pmod(a, b, p))
    return a


def _ppowmod(base, e, f, p):
    result = [1]
    base = _trim(_pmod(base, f, p))
    while e:
        if e & 1:
            result = _trim(_pmod(_pmul(result, base, p), f, p))
        base = _trim(_pmod(_pmul(base, base, p), f, p))
        e >>= 1
    return result


def is_irreducible(f, p) -> bool:
    """Ben-Or test for a monic polynomial over F_p."""
    d = len(f) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    xp = [0, 1]
    for _ in range(d // 2):
        xp = _ppowmod(xp, p, f, p)
        g = _pgcd(f, _psub(xp, [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, d: int) -> tuple[int, ...]:
    for low in itertools.product(range(p), repeat=d):
        f = list(low) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise FieldError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------- the field


class GF:
    """The field GF(p^d) with a fixed modulus and primitive element."""

    def __init__(self, p: int, d: int = 1, bound: int = FIELD_BOUND):
        if not isprime(p):
            raise FieldError("not prime")
        if d < 1:
            raise FieldError("degree must be positive")
        if p**d > bound:
            raise FieldError("field too large")
        self.p, self.d, self.q = p, d, p**d
        self.modulus = smallest_irreducible(p, d) if d > 1 else (0, 1)
        T = np.zeros((d, d, d), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                mono = [0] * (i + j) + [1]
                r = _pmod(mono, list(self.modulus), p) if d > 1 else [1]
                for k, c in enumerate(r[:d]):
                    T[i, j, k] = c
        self._T = T
        self.generator = self._find_generator()

    def __repr__(self):
        return f"GF({self.p}^{self.d})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.d) == (other.p, other.d)

    def __hash__(self):
        return hash((self.p, self.d))

    # scalar helpers, pure python tuples ------------------------------
    def vec(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.d):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def code(self, v) -> int:
        c = 0
        for x in reversed(list(v)):
            c = c * self.p + int(x) % self.p
        return c

    def smul(self, a: int, b: int) -> int:
        if self.d == 1:
            return a * b % self.p
        prod = _pmul(list(self.vec(a)), list(self.vec(b)), self.p)
        return self.code(_pmod(prod, list(self.modulus), self.p)[: self.d] + [0] * self.d)

    def spow(self, a: int, e: int) -> int:
        if self.d == 1:
            return pow(a, e, self.p)
        r, base = 1, a
        while e:
            if e & 1:
                r = self.smul(r, base)
            base = self.smul(base, base)
            e >>= 1
        return r

    def sinv(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero element")
        return self.spow(a, self.q - 2)

    def sadd(self, a: int, b: int) -> int:
        return self.code([(x + y) for x, y in zip(self.vec(a), self.vec(b))])

    def sneg(self, a: int) -> int:
        return self.code([-x for x in self.vec(a)])

    def elements_in_order(self):
        """All codes ordered lexicographically from the constant term up."""
        for v in itertools.product(range(self.p), repeat=self.d):
            yield self.code(v)

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        n = self.q - 1
        primes = list(factorint(n))
        for a in self.elements_in_order():
            if a == 0:
                continue
            if all(self.spow(a, n // r) != 1 for r in primes):
                return a
        raise FieldError("no generator")  # unreachable

    def in_prime_field(self, code: int) -> bool:
        return code < self.p

    def root_of_unity(self, n: int) -> int:
        """The element g^((q-1)/n), a primitive n-th root of unity."""
        if (self.q - 1) % n:
            raise FieldError("field lacks required roots of unity")
        return self.spow(self.generator, (self.q - 1) // n)

    @cached_property
    def _bsgs(self):
        m = math.isqrt(self.q - 1) + 1
        table = {}
        x = 1
        for j in range(m):
            table.setdefault(x, j)
            x = self.smul(x, self.generator)
        giant = self.sinv(self.spow(self.generator, m))
        return m, table, giant

    def log(self, u: int) -> int:
        """Exponent k in [0, q-1) with generator^k == u."""
        if u == 0:
            raise FieldError("zero element")
        m, table, giant = self._bsgs
        y = u
        for i in range(m + 1):
            if y in table:
                return (i * m + table[y]) % (self.q - 1)
            y = self.smul(y, giant)
        raise FieldError("logarithm not found")  # unreachable

    # array operations ------------------------------------------------
    def array(self, codes) -> np.ndarray:
        c = np.asarray(codes, dtype=np.int64)
        out = np.empty(c.shape + (self.d,), dtype=np.int64)
        for i in range(self.d):
            c, out[..., i] = np.divmod(c, self.p)
        return out

    def codes(self, arr: np.ndarray) -> np.ndarray:
        arr = np.asarray(arr)
        c = np.zeros(arr.shape[:-1], dtype=np.int64)
        for i in reversed(range(self.d)):
            c = c * self.p + arr[..., i]
        return c

    def scalar(self, code: int) -> np.ndarray:
        return np.array(self.vec(code), dtype=np.int64)

    def zeros(self, *dims) -> np.ndarray:
        return np.zeros(tuple(dims) + (self.d,), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        out[np.arange(n), np.arange(n), 0] = 1
        return out

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        """Entrywise product with numpy broadcasting over leading axes."""
        if self.d == 1:
            return a * b % self.p
        outer = a[..., :, None] * b[..., None, :]
        return np.tensordot(outer, self._T, axes=([-2, -1], [0, 1])) % self.p

    def matmul(self, A, B):
        if self.d == 1:
            return (np.matmul(A[..., 0], B[..., 0]) % self.p)[..., None]
        outer = np.einsum("...rmi,...mcj->...rcij", A, B)
        return np.tensordot(outer % self.p, self._T, axes=([-2, -1], [0, 1])) % self.p

    def inv_vec(self, v: np.ndarray) -> np.ndarray:
        return self.scalar(self.sinv(self.code(v)))

    def is_zero(self, arr) -> np.ndarray:
        return ~np.any(arr, axis=-1)

    def random_array(self, rng, *dims) -> np.ndarray:
        n = int(np.prod(dims)) if dims else 1
        codes = [rng.randrange(self.q) for _ in range(n)]
        return self.array(np.array(codes, dtype=np.int64).reshape(dims))


def make_field(p: int, d: int = 1, bound: int = FIELD_BOUND) -> GF:
    return _field_cache(p, d, bound)


_FIELDS: dict = {}


def _field_cache(p, d, bound):
    key = (p, d, bound)
    if key not in _FIELDS:
        _FIELDS[key] = GF(p, d, bound)
    return _FIELDS[key]


def discrete_log_unit(F: GF, u: int) -> int:
    return F.log(u)


# ---------------------------------------------------------------- linear algebra


def rref(F: GF, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; pivot search takes the lowest row at each column."""
    A = np.array(A, dtype=np.int64, copy=True)
    r, c = A.shape[0], A.shape[1]
    pivots: list[int] = []
    row = 0
    if F.d == 1:
        p = F.p
        B = A[..., 0]
        for col in range(c):
            if row == r:
                break
            nz = np.flatnonzero(B[row:, col])
            if nz.size == 0:
                continue
            k = row + int(nz[0])
            if k != row:
                B[[row, k]] = B[[k, row]]
            inv = pow(int(B[row, col]), p - 2, p)
            B[row] = B[row] * inv % p
            f = B[:, col].copy()
            f[row] = 0
            if f.any():
                B -= np.outer(f, B[row])
                B %= p
            pivots.append(col)
            row += 1
        return B[..., None], pivots
    for col in range(c):
        if row == r:
            break
        nz = np.flatnonzero(np.any(A[row:, col], axis=-1))
        if nz.size == 0:
            continue
        k = row + int(nz[0])
        if k != row:
            A[[row, k]] = A[[k, row]]
        A[row] = F.mul(F.inv_vec(A[row, col])[None, :], A[row])
        f = A[:, col].copy()
        f[row] = 0
        if f.any():
            A = F.sub(A, F.mul(f[:, None, :], A[row][None, :, :]))
        pivots.append(col)
        row += 1
    return A, pivots


def rank(F: GF, A: np.ndarray) -> int:
    if A.shape[0] == 0 or A.shape[1] == 0:
        return 0
    return len(rref(F, A)[1])


def row_basis(F: GF, A: np.ndarray) -> np.ndarray:
    """Echelon basis (as rows) of the row space."""
    if A.shape[0] == 0:
        return A[:0]
    R, piv = rref(F, A)
    return R[: len(piv)]


def nullspace(F: GF, A: np.ndarray) -> np.ndarray:
    """Basis (as rows) of ``{x : A x = 0}``."""
    n = A.shape[1]
    if A.shape[0] == 0:
        return F.eye(n)
    R, piv = rref(F, A)
    free = [j for j in range(n) if j not in piv]
    out = F.zeros(len(free), n)
    for t, j in enumerate(free):
        out[t, j, 0] = 1
        for i, pc in enumerate(piv):
            out[t, pc] = F.neg(R[i, j])
    return out


kernel = nullspace


def solve(F: GF, A: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution of ``A x = b`` (free variables set to zero), or None if inconsistent."""
    m, n = A.shape[0], A.shape[1]
    aug = np.concatenate([A, b.reshape(m, 1, F.d)], axis=1)
    R, piv = rref(F, aug)
    if n in piv:
        return None
    x = F.zeros(n)
    for i, pc in enumerate(piv):
        x[pc] = R[i, n]
    return x


def inverse(F: GF, A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    R, piv = rref(F, np.concatenate([A, F.eye(n)], axis=1))
    if piv[:n] != list(range(n)):
        raise FieldError("singular matrix")
    return R[:, n:]


def matpow(F: GF, A: np.ndarray, e: int) -> np.ndarray:
    result = F.eye(A.shape[0])
    base = A
    while e:
        if e & 1:
            result = F.matmul(result, base)
        base = F.matmul(base, base)
        e >>= 1
    return result


def eigen_multiplicity(F: GF, A: np.ndarray, lam: int) -> int:
    """Dimension of the generalized eigenspace of ``A`` at ``lam``."""
    n = A.shape[0]
    if n == 0:
        return 0
    B = F.sub(A, F.mul(F.scalar(lam), F.eye(n)))
    return n - rank(F, matpow(F, B, n))
