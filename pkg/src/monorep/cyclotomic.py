"""Exact arithmetic in the cyclotomic integers Z[zeta_n]."""

from __future__ import annotations

from functools import lru_cache


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    """Quotient of integer polynomials (low degree first), b monic, exact division."""
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        q[k - db] = c
        if c:
            for i, bi in enumerate(b):
                a[k - db + i] -= c * bi
    if any(a[:db]):
        raise ArithmeticError("division not exact")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    if n < 1:
        raise ValueError("n must be positive")
    f = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            f = _poly_divexact(f, list(cyclotomic_poly(d)))
    return tuple(f)


def _reduce(coeffs: list[int], n: int) -> tuple[int, ...]:
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    a = list(coeffs) + [0] * max(0, deg - len(coeffs))
    for k in range(len(a) - 1, deg - 1, -1):
        c = a[k]
        if c:
            for i, ci in enumerate(phi):
                a[k - deg + i] -= c * ci
    return tuple(a[:deg])


class CycInt:
    """An element of Z[zeta_n] stored in the power basis modulo the cyclotomic polynomial."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs=()):
        self.n = n
        self.c = _reduce(list(coeffs), n)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycInt":
        k %= n
        return cls(n, [0] * k + [1])

    @classmethod
    def integer(cls, n: int, v: int) -> "CycInt":
        return cls(n, [v])

    def _coerce(self, other):
        if isinstance(other, CycInt):
            if other.n != self.n:
                raise ValueError("conductor mismatch")
            return other
        if isinstance(other, int):
            return CycInt(self.n, [other])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.n, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.n, [-a for a in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = [0] * (len(self.c) + len(o.c))
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return CycInt(self.n, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.c == o.c

    def __hash__(self):
        return hash((self.n, self.c))

    def is_integer(self) -> bool:
        return not any(self.c[1:])

    def __int__(self):
        if not self.is_integer():
            raise ValueError("not a rational integer")
        return self.c[0]

    def coords(self) -> tuple[int, ...]:
        return self.c

    def mult_matrix(self) -> list[list[int]]:
        """Matrix of multiplication by self on the power basis (columns are images)."""
        deg = len(self.c)
        cols = [(self * CycInt.zeta(self.n, k)).c for k in range(deg)]
        return [[cols[j][i] for j in range(deg)] for i in range(deg)]

    def __repr__(self):
        return f"CycInt({self.n}, {list(self.c)})"

    def __str__(self):
        if self.is_integer():
            return str(self.c[0])
        terms = []
        for k, a in enumerate(self.c):
            if not a:
                continue
            mono = "1" if k == 0 else (f"z{self.n}" if k == 1 else f"z{self.n}^{k}")
            if k == 0:
                terms.append(str(a))
            elif a == 1:
                terms.append(mono)
            elif a == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{a}*{mono}")
        return "+".join(terms).replace("+-", "-")


def parse_cycint(n: int, text: str) -> CycInt:
    """Inverse of ``str`` for the rendering produced by CycInt."""
    import re

    s = text.replace(" ", "")
    total = CycInt(n)
    for tok in re.findall(r"[+-]?[^+-]+", s):
        sgn = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("+-")
        if "z" in tok:
            coeff, _, mono = tok.rpartition("*") if "*" in tok else ("1", "", tok)
            k = int(mono.split("^")[1]) if "^" in mono else 1
            total = total + CycInt.zeta(n, k) * (sgn * int(coeff))
        else:
            total = total + sgn * int(tok)
    return total
