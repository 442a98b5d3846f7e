"""Finite-field monoid algebras: composition factors, radical, Cartan matrix and quiver.

Modules are given by one action matrix per monoid element, acting on
column vectors. Simple modules are found by a MeatAxe-style chop of the
regular module using Norton's irreducibility criterion with linear
factors, which is complete once the field splits the algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from sympy import n_order

from . import gf
from .gf import GF, make_field
from .linalg import determinant
from .monoid import FiniteMonoid, MonoidError, j_class_order, p_part_split

CHOP_BUDGET = 64
LIFT_STEPS = 64


class ChopError(MonoidError):
    pass


class SplittingError(MonoidError):
    pass


# ---------------------------------------------------------------- modules


class ModuleRep:
    """A module over ``F M`` given by its action matrices, shape ``(N, n, n, d)``."""

    def __init__(self, F: GF, action: np.ndarray):
        self.F = F
        self.action = action

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    def act(self, m: int) -> np.ndarray:
        return self.action[m]

    def element(self, coeffs: np.ndarray) -> np.ndarray:
        """Action of the algebra element with coefficient vector ``coeffs`` (shape ``(N, d)``)."""
        F = self.F
        if F.d == 1:
            return (np.tensordot(coeffs[:, 0], self.action[..., 0], axes=1) % F.p)[..., None]
        return F.mul(coeffs[:, None, None, :], self.action).sum(axis=0) % F.p

    @cached_property
    def fingerprint(self) -> tuple[int, ...]:
        """Trace of every monoid element, as field codes."""
        n = self.dim
        tr = self.action[:, np.arange(n), np.arange(n), :].sum(axis=1) % self.F.p
        return tuple(int(x) for x in self.F.codes(tr))

    def spin(self, v: np.ndarray) -> np.ndarray:
        vecs = self.F.matmul(self.action, v[None, :, None, :])[:, :, 0, :]
        return gf.row_basis(self.F, vecs)

    def spin_dual(self, w: np.ndarray) -> np.ndarray:
        At = self.action.transpose(0, 2, 1, 3)
        vecs = self.F.matmul(At, w[None, :, None, :])[:, :, 0, :]
        return gf.row_basis(self.F, vecs)

    def split(self, W: np.ndarray) -> tuple["ModuleRep", "ModuleRep"]:
        """Submodule spanned by the echelon rows ``W`` and the quotient by it."""
        F = self.F
        n, k = self.dim, W.shape[0]
        R, piv = gf.rref(F, W)
        R = R[:k]
        free = [j for j in range(n) if j not in piv]
        P = F.zeros(n, n)
        P[:, :k] = R.transpose(1, 0, 2)
        for t, j in enumerate(free):
            P[j, k + t, 0] = 1
        Pinv = gf.inverse(F, P)
        new = F.matmul(F.matmul(np.broadcast_to(Pinv, self.action.shape), self.action), np.broadcast_to(P, self.action.shape))
        if np.any(new[:, k:, :k]):
            raise ChopError("subspace is not a submodule")
        return ModuleRep(F, np.ascontiguousarray(new[:, :k, :k])), ModuleRep(F, np.ascontiguousarray(new[:, k:, k:]))

    def restrict(self, W: np.ndarray) -> "ModuleRep":
        return self.split(W)[0]

    def extend(self, E: GF) -> "ModuleRep":
        """Extension of scalars to a field with the same prime, containing this one."""
        if E.p != self.F.p or E.d % self.F.d:
            raise ValueError("not a field extension")
        if E.d == self.F.d:
            return self
        if self.F.d != 1:
            raise NotImplementedError("extension from a non-prime subfield")
        pad = np.zeros(self.action.shape[:-1] + (E.d - 1,), dtype=np.int64)
        return ModuleRep(E, np.concatenate([self.action, pad], axis=-1))


def regular_module(M: FiniteMonoid, F: GF) -> ModuleRep:
    N = M.size
    act = np.zeros((N, N, N, F.d), dtype=np.int64)
    m, x = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    act[m, M.table[m, x], x, 0] = 1
    return ModuleRep(F, act)


def hom_dim(S: ModuleRep, T: ModuleRep) -> int:
    """Dimension of the space of module maps from S to T."""
    F = S.F
    a, b = S.dim, T.dim
    if a == 0 or b == 0:
        return 0
    blocks = []
    Ia, Ib = np.eye(a, dtype=np.int64), np.eye(b, dtype=np.int64)
    for m in range(S.action.shape[0]):
        rs, rt = S.action[m], T.action[m]
        # vec(rt X - X rs) in column-major order
        planes = [np.kron(Ia, rt[..., k]) - np.kron(rs[..., k].T, Ib) for k in range(F.d)]
        blocks.append(np.stack(planes, axis=-1) % F.p)
    system = np.concatenate(blocks, axis=0)
    return a * b - gf.rank(F, system)


def isomorphic(S: ModuleRep, T: ModuleRep) -> bool:
    """Isomorphism test for simple modules over a splitting field."""
    if S.dim != T.dim or S.fingerprint != T.fingerprint:
        return False
    return hom_dim(S, T) == 1


# ---------------------------------------------------------------- chop


def _min_poly_of_vector(F: GF, A: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Coefficients c_0..c_k (monic) of the least polynomial killing v under A."""
    n = A.shape[0]
    K = [v]
    for _ in range(n):
        K.append(F.matmul(A, K[-1][:, None, :])[:, 0, :])
    Kt = np.stack(K, axis=1)  # (n, n+1, d)
    R, piv = gf.rref(F, Kt)
    j = next(c for c in range(n + 1) if c not in piv)
    coeffs = F.zeros(j + 1)
    coeffs[j, 0] = 1
    for i, pc in enumerate(piv):
        if pc < j:
            coeffs[pc] = F.neg(R[i, j])
    return coeffs


def _roots(F: GF, coeffs: np.ndarray) -> list[int]:
    xs = F.array(np.arange(F.q))
    acc = np.broadcast_to(coeffs[-1], xs.shape).copy()
    for c in coeffs[-2::-1]:
        acc = F.add(F.mul(acc, xs), c[None, :])
    return [int(x) for x in np.flatnonzero(F.is_zero(acc))]


def find_submodule(V: ModuleRep, rng: random.Random, budget: int = CHOP_BUDGET) -> np.ndarray | None:
    """Echelon basis of a proper nonzero submodule, or None if V is simple."""
    F = V.F
    n = V.dim
    if n <= 1:
        return None
    N = V.action.shape[0]
    for _ in range(budget):
        a = V.element(F.random_array(rng, N))
        v0 = F.random_array(rng, n)
        if not v0.any():
            continue
        roots = _roots(F, _min_poly_of_vector(F, a, v0))
        if not roots:
            continue
        lam = roots[rng.randrange(len(roots))]
        b = F.sub(a, F.mul(F.scalar(lam), F.eye(n)))
        ker = gf.nullspace(F, b)
        for v in ker:
            W = V.spin(v)
            if W.shape[0] < n:
                return W
        if ker.shape[0] == 1:
            kt = gf.nullspace(F, b.transpose(1, 0, 2))
            Wd = V.spin_dual(kt[0])
            if Wd.shape[0] < n:
                return gf.row_basis(F, gf.nullspace(F, Wd))
            return None
        combo = F.random_array(rng, ker.shape[0])
        v = F.matmul(combo[None, :, :], ker)[0]
        if v.any():
            W = V.spin(v)
            if W.shape[0] < n:
                return W
    raise ChopError("iteration budget exceeded")


def chop(V: ModuleRep, seed: int = 0, budget: int = CHOP_BUDGET) -> list[ModuleRep]:
    """Composition factors of V, bottom to top along the series found."""
    rng = random.Random(seed)
    out: list[ModuleRep] = []
    stack = [V]
    while stack:
        X = stack.pop()
        W = find_submodule(X, rng, budget)
        if W is None:
            out.append(X)
            continue
        sub, quo = X.split(W)
        # process sub before quo to keep bottom-to-top order
        stack.append(quo)
        stack.append(sub)
    return out


def dedupe_simples(mods: list[ModuleRep]) -> list[ModuleRep]:
    reps: list[ModuleRep] = []
    for S in mods:
        if not any(isomorphic(S, T) for T in reps):
            reps.append(S)
    return reps


def multiplicities(factors: list[ModuleRep], simples: list[ModuleRep]) -> list[int]:
    counts = [0] * len(simples)
    for X in factors:
        hits = [i for i, S in enumerate(simples) if isomorphic(X, S)]
        if len(hits) != 1:
            raise ChopError("composition factor does not match a unique simple")
        counts[hits[0]] += 1
    return counts


# ---------------------------------------------------------------- the algebra


def splitting_degree(M: FiniteMonoid, p: int) -> int:
    """Degree d such that GF(p^d) contains the roots of unity of order the p'-exponent."""
    _, nq = p_part_split(M.omega.exponent(), p)
    return 1 if nq == 1 else int(n_order(p, nq))


@dataclass
class CartanData:
    labels: list[str]
    C: list[list[int]]
    det: int
    idempotents: list[np.ndarray]  # one primitive idempotent per simple, as coefficient vectors
    loewy_length: int
    route_b: list[list[int]] = field(default_factory=list)


@dataclass
class QuiverData:
    labels: list[str]
    arrows: list[list[int]]  # arrows[i][j]: number of arrows from simple i to simple j


class ModularAlgebra:
    """The algebra ``F M`` with its simple modules and derived invariants.

    The field is trusted to split the algebra; ``check_split`` verifies it.
    """

    def __init__(self, M: FiniteMonoid, F: GF, seed: int = 0, budget: int = CHOP_BUDGET):
        self.M, self.F, self.seed, self.budget = M, F, seed, budget
        self._calls = 0

    def _seed(self) -> int:
        self._calls += 1
        return (self.seed * 1_000_003 + self._calls) & 0xFFFFFFFF

    @cached_property
    def regular(self) -> ModuleRep:
        return regular_module(self.M, self.F)

    @cached_property
    def composition_factors(self) -> list[ModuleRep]:
        return chop(self.regular, self._seed(), self.budget)

    @cached_property
    def simples(self) -> list[ModuleRep]:
        """One simple per isomorphism class, ordered by apex, then dimension, then character."""
        found = dedupe_simples(self.composition_factors)
        order = {j: i for i, j in enumerate(j_class_order(self.M))}
        key = lambda S: (order[self.M.green.j_of[self.apex_of(S)]], S.dim, S.fingerprint)
        return sorted(found, key=key)

    def apex_of(self, S: ModuleRep) -> int:
        """Idempotent representative of the J-least regular class not killing S."""
        g = self.M.green
        live = [e for e in g.idempotent_rep if e is not None and S.action[e].any()]
        for e in live:
            if all(g.j_leq[g.j_of[e], g.j_of[f]] for f in live):
                return e
        raise MonoidError("simple module without apex")  # unreachable

    @property
    def dims(self) -> list[int]:
        return [S.dim for S in self.simples]

    @cached_property
    def labels(self) -> list[str]:
        return [f"S{i}[apex={self.apex_of(S)},dim={S.dim}]" for i, S in enumerate(self.simples)]

    def traces_in_prime_field(self) -> bool:
        return all(c < self.F.p for S in self.simples for c in S.fingerprint)

    # Wedderburn data -------------------------------------------------
    @cached_property
    def _pi(self) -> np.ndarray:
        """Matrix of the map onto the product of the simple endomorphism rings."""
        F = self.F
        cols = [S.action.reshape(self.M.size, S.dim * S.dim, F.d) for S in self.simples]
        return np.concatenate(cols, axis=1).transpose(1, 0, 2)

    def check_split(self) -> None:
        total = sum(d * d for d in self.dims)
        if gf.rank(self.F, self._pi) != total:
            raise SplittingError("field does not split the algebra")
        for S in self.simples:
            if hom_dim(S, S) != 1:
                raise SplittingError("simple module is not absolutely simple")

    @cached_property
    def radical(self) -> np.ndarray:
        """Basis rows of the Jacobson radical as vectors in the monoid basis."""
        return gf.nullspace(self.F, self._pi)

    # multiplication --------------------------------------------------
    def mult(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        F = self.F
        N = self.M.size
        outer = F.mul(a[:, None, :], b[None, :, :]).reshape(N * N, F.d)
        out = np.zeros((N, F.d), dtype=np.int64)
        np.add.at(out, self.M.table.ravel(), outer)
        return out % F.p

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> x y``."""
        N = self.M.size
        L = np.zeros((N, N, self.F.d), dtype=np.int64)
        m, y = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
        np.add.at(L, (self.M.table[m, y].ravel(), y.ravel()), np.repeat(x, N, axis=0))
        return L % self.F.p

    def right_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> y x``."""
        N = self.M.size
        R = np.zeros((N, N, self.F.d), dtype=np.int64)
        y, m = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
        np.add.at(R, (self.M.table[y, m].ravel(), y.ravel()), x[m.ravel()])
        return R % self.F.p

    @property
    def one(self) -> np.ndarray:
        v = self.F.zeros(self.M.size)
        v[self.M.identity, 0] = 1
        return v

    def _lift(self, a: np.ndarray) -> np.ndarray:
        p = self.F.p
        for _ in range(LIFT_STEPS):
            a2 = self.mult(a, a)
            if np.array_equal(a2, a):
                return a
            a3 = self.mult(a2, a)
            a = (3 * a2 - 2 * a3) % p
        raise MonoidError("idempotent lifting did not converge")

    @cached_property
    def primitive_idempotents(self) -> list[list[np.ndarray]]:
        """Orthogonal primitive idempotents summing to 1, grouped by simple module."""
        F = self.F
        dims = self.dims
        offsets = np.cumsum([0] + [d * d for d in dims])
        targets = []
        for i, d in enumerate(dims):
            for j in range(d):
                t = F.zeros(int(offsets[-1]))
                t[offsets[i] + j * d + j, 0] = 1
                targets.append((i, t))
        done: list[np.ndarray] = []
        groups: list[list[np.ndarray]] = [[] for _ in dims]
        for k, (i, t) in enumerate(targets):
            f = self.one
            for e in done:
                f = F.sub(f, e)
            if k == len(targets) - 1:
                e = self._lift(f)
            else:
                a0 = gf.solve(F, self._pi, t)
                if a0 is None:
                    raise SplittingError("matrix unit has no preimage")
                e = self._lift(self.mult(self.mult(f, a0), f))
            done.append(e)
            groups[i].append(e)
        total = self.F.zeros(self.M.size)
        for e in done:
            total = F.add(total, e)
        if not np.array_equal(total, self.one):
            raise MonoidError("idempotents do not sum to one")
        return groups

    @property
    def idempotent_reps(self) -> list[np.ndarray]:
        return [g[0] for g in self.primitive_idempotents]

    def corner_dim(self, ei: np.ndarray, ej: np.ndarray, basis: np.ndarray | None = None) -> int:
        """Dimension of ``ei X ej`` for X spanned by ``basis`` (default: the whole algebra)."""
        T = self.F.matmul(self.left_matrix(ei), self.right_matrix(ej))
        if basis is None:
            return gf.rank(self.F, T)
        if basis.shape[0] == 0:
            return 0
        imgs = self.F.matmul(T, basis.transpose(1, 0, 2))
        return gf.rank(self.F, imgs.transpose(1, 0, 2))

    # invariants ------------------------------------------------------
    def cartan_route_a(self) -> list[list[int]]:
        es = self.idempotent_reps
        return [[self.corner_dim(ei, ej) for ej in es] for ei in es]

    def projective(self, j: int) -> ModuleRep:
        e = self.idempotent_reps[j]
        vecs = self.right_matrix(e).transpose(1, 0, 2)
        return self.regular.restrict(gf.row_basis(self.F, vecs))

    def cartan_route_b(self) -> list[list[int]]:
        cols = [multiplicities(chop(self.projective(j), self._seed(), self.budget), self.simples) for j in range(len(self.simples))]
        return [[cols[j][i] for j in range(len(cols))] for i in range(len(cols))]

    @cached_property
    def radical_powers(self) -> list[np.ndarray]:
        """Bases of rad, rad^2, ... up to the last nonzero power."""
        out = []
        cur = self.radical
        rad_left = [self.left_matrix(r) for r in self.radical]
        while cur.shape[0]:
            out.append(cur)
            prods = [self.F.matmul(L, cur.transpose(1, 0, 2)).transpose(1, 0, 2) for L in rad_left]
            cur = gf.row_basis(self.F, np.concatenate(prods, axis=0))
        return out

    @property
    def loewy_length(self) -> int:
        return len(self.radical_powers) + 1

    @cached_property
    def cartan(self) -> CartanData:
        """Cartan matrix; entry (i, j) is the multiplicity of simple i in the cover of simple j.

        Two routes are computed and must agree: corner dimensions of the
        primitive idempotents, and a chop of each indecomposable projective.
        """
        self.check_split()
        C = self.cartan_route_a()
        B = self.cartan_route_b()
        if C != B:
            raise MonoidError("Cartan routes disagree")
        return CartanData(self.labels, C, determinant(C), self.idempotent_reps, self.loewy_length, B)

    @cached_property
    def quiver(self) -> QuiverData:
        es = self.idempotent_reps
        rad = self.radical
        rad2 = self.radical_powers[1] if len(self.radical_powers) > 1 else self.F.zeros(0, self.M.size)
        n = len(es)
        arrows = [[self.corner_dim(es[j], es[i], rad) - self.corner_dim(es[j], es[i], rad2) for j in range(n)] for i in range(n)]
        return QuiverData(self.labels, arrows)


@dataclass
class FieldChoice:
    p: int
    bound_degree: int
    degree: int

    @property
    def smaller_than_bound(self) -> bool:
        return self.degree < self.bound_degree


def modular_algebra(M: FiniteMonoid, p: int, seed: int = 0) -> tuple[ModularAlgebra, FieldChoice]:
    """Algebra over a splitting field of characteristic p.

    Starts from the field containing the needed roots of unity; if every
    simple character already takes values in the prime field, repeats over
    the prime field, which then also splits.
    """
    d = splitting_degree(M, p)
    A = ModularAlgebra(M, make_field(p, d), seed)
    used = d
    if d > 1 and A.traces_in_prime_field():
        A = ModularAlgebra(M, make_field(p, 1), seed)
        used = 1
    A.check_split()
    return A, FieldChoice(p, d, used)
