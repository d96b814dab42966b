"""The twisted skew group ring R = K^alpha[G; sigma] and its one-sided ideals.

An element is a length-|G| array of field codes (coefficient of g-bar at index g).
For linear algebra every element is expanded over the prime field F_p into a
vector of length |G|*m, group-major and field-coordinate-minor. Ideals are
stored as F_p subspaces in reduced row echelon form, which makes equality a
direct array comparison.
"""
from __future__ import annotations

from functools import cached_property

import numpy as np

from . import fplinalg as la
from .crossed import CrossedSystem
from .errors import BudgetExceeded, SystemMismatch

PRINCIPAL_BUDGET = 10**6
CLOSURE_MAX_DIM = 8
SIDES = ("left", "right")


class TwistedRing:
    def __init__(self, sys: CrossedSystem):
        self.sys = sys
        self.field = sys.field
        self.group = sys.group
        self.n = sys.group.n
        self.m = sys.field.m
        self.p = sys.field.p
        self.dim_p = self.n * self.m

    # --- structure constants ----------------------------------------------

    @cached_property
    def structure(self) -> np.ndarray:
        """S[a, b] = F_p coordinates of basis_a * basis_b, basis_(g,i) = x^i g-bar."""
        N, m, n = self.dim_p, self.m, self.n
        F = self.field
        S = np.zeros((N, N, N), dtype=np.int64)
        T = self.group.table
        alpha = self.sys.alpha.tab
        exps = self.sys.sigma.exps
        for g in range(n):
            for i in range(m):
                a = g * m + i
                for h in range(n):
                    gh = int(T[g, h])
                    for j in range(m):
                        b = h * m + j
                        coef = F.mul(F.mul(self.p**i, F.frob(self.p**j, exps[g])), int(alpha[g, h]))
                        S[a, b, gh * m : gh * m + m] = F.to_vec(coef)
        S.flags.writeable = False
        return S

    # --- element helpers -----------------------------------------------------

    def elem(self, coeffs) -> "RingElem":
        return RingElem(self, coeffs)

    def zero(self) -> "RingElem":
        return RingElem(self, np.zeros(self.n, dtype=np.int64))

    def one(self) -> "RingElem":
        return self.basis_elem(0)

    def basis_elem(self, g: int, coef: int = 1) -> "RingElem":
        c = np.zeros(self.n, dtype=np.int64)
        c[g] = coef
        return RingElem(self, c)

    def group_sum(self, members=None) -> "RingElem":
        c = np.zeros(self.n, dtype=np.int64)
        c[list(range(self.n)) if members is None else list(members)] = 1
        return RingElem(self, c)

    def to_vec(self, coeffs) -> np.ndarray:
        """Field codes (..., n) -> F_p vectors (..., n*m)."""
        coeffs = np.asarray(coeffs, dtype=np.int64)
        d = self.field.digit_table[coeffs]
        return d.reshape(coeffs.shape[:-1] + (self.dim_p,))

    def from_vec(self, vec) -> np.ndarray:
        """F_p vectors (..., n*m) -> field codes (..., n)."""
        vec = np.asarray(vec, dtype=np.int64) % self.p
        d = vec.reshape(vec.shape[:-1] + (self.n, self.m))
        pw = self.p ** np.arange(self.m, dtype=np.int64)
        return (d * pw).sum(axis=-1)

    def elem_from_vec(self, vec) -> "RingElem":
        return RingElem(self, self.from_vec(vec))

    def all_vectors(self) -> np.ndarray:
        return la.all_combinations(self.dim_p, self.p)

    # --- multiplication --------------------------------------------------------

    def mul_codes(self, x, y) -> np.ndarray:
        """Product from the defining formula: (a x-bar)(b y-bar) = a x(b) alpha(x,y) (xy)-bar."""
        F = self.field
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        T = self.group.table
        exps = self.sys.sigma.array()
        terms = F.vmul(F.vmul(x[:, None], F.vfrob(y[None, :], exps[:, None])), self.sys.alpha.tab)
        acc = np.zeros((self.n, self.m), dtype=np.int64)
        np.add.at(acc, T, F.digit_table[terms])
        return self.from_vec((acc % self.p).reshape(-1))

    def mul_matrix_vec(self, fvec, side: str) -> np.ndarray:
        """F_p matrix of v -> f v (left) or v -> v f (right); columns are images of basis vectors."""
        fvec = np.asarray(fvec, dtype=np.int64)
        S = self.structure
        if side == "left":
            M = np.einsum("a,abc->cb", fvec, S)
        elif side == "right":
            M = np.einsum("b,abc->ca", fvec, S)
        else:
            raise ValueError(f"side must be left or right, got {side!r}")
        return M % self.p

    def batched_mul_matrices(self, fvecs, side: str) -> np.ndarray:
        fvecs = np.asarray(fvecs, dtype=np.int64)
        S = self.structure
        if side == "left":
            M = np.einsum("za,abc->zcb", fvecs, S)
        else:
            M = np.einsum("zb,abc->zca", fvecs, S)
        return M % self.p

    def mul_matrix(self, f: "RingElem", side: str) -> np.ndarray:
        return self.mul_matrix_vec(f.vec, side)

    def products_with_basis(self, rows, side: str) -> np.ndarray:
        """For each row x: x * e_b (side='right') or e_b * x (side='left'), all b; shape (k*N, N)."""
        rows = np.asarray(rows, dtype=np.int64)
        S = self.structure
        if side == "right":
            P = np.einsum("ka,abc->kbc", rows, S)
        else:
            P = np.einsum("ka,bac->kbc", rows, S)
        return (P % self.p).reshape(-1, self.dim_p)

    # --- ideals ---------------------------------------------------------------

    def ideal(self, rows, side: str) -> "IdealHandle":
        return IdealHandle(self, la.row_space(np.asarray(rows, dtype=np.int64).reshape(-1, self.dim_p), self.p, self.dim_p), side)

    def zero_ideal(self, side: str = "right") -> "IdealHandle":
        return IdealHandle(self, np.zeros((0, self.dim_p), dtype=np.int64), side)

    def whole(self, side: str = "right") -> "IdealHandle":
        return IdealHandle(self, np.eye(self.dim_p, dtype=np.int64), side)

    def principal_ideal(self, v: "RingElem", side: str) -> "IdealHandle":
        """vR for side='right', Rv for side='left'."""
        M = self.mul_matrix_vec(v.vec, "left" if side == "right" else "right")
        I = IdealHandle(self, la.row_space(M.T, self.p, self.dim_p), side)
        I.generator = v
        return I

    def annihilator(self, arg, side: str) -> "IdealHandle":
        """Ann_r (side='right') or Ann_l (side='left') of an element or a set."""
        if isinstance(arg, RingElem):
            rows = arg.vec[None, :]
        elif isinstance(arg, IdealHandle):
            rows = arg.basis
        else:
            rows = np.atleast_2d(np.asarray(arg, dtype=np.int64))
        if rows.shape[0] == 0:
            return self.whole(side)
        op = "left" if side == "right" else "right"
        M = np.vstack([self.mul_matrix_vec(r, op) for r in rows])
        return IdealHandle(self, la.nullspace(M, self.p), side)

    def is_ideal(self, rows, side: str) -> bool:
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        if rows.shape[0] == 0 or not rows.any():
            return True
        sides = ("left", "right") if side in ("two-sided", "both") else (side,)
        for s in sides:
            prods = self.products_with_basis(rows, s)
            if not la.in_span(rows, prods, self.p).all():
                return False
        return True

    def enumerate_principal_ideals(self, side: str = "right", budget: int = PRINCIPAL_BUDGET, chunk: int = 20000) -> list["IdealHandle"]:
        """{vR} (or {Rv}) over all v, deduplicated by canonical basis."""
        total = self.p**self.dim_p
        if total > budget:
            raise BudgetExceeded(f"{total} generators exceed budget {budget}")
        op = "left" if side == "right" else "right"
        found: dict[bytes, np.ndarray] = {}
        for start in range(0, total, chunk):
            codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
            vecs = _int_to_vecs(codes, self.p, self.dim_p)
            Ms = self.batched_mul_matrices(vecs, op).transpose(0, 2, 1)
            R, ranks = la.batched_rref(Ms, self.p)
            for b in np.unique(_row_keys(R), return_index=True)[1]:
                basis = R[b, : ranks[b]]
                key = basis.tobytes() + bytes([int(ranks[b])])
                if key not in found:
                    found[key] = (basis.copy(), vecs[b])
        ideals = []
        for basis, gen in found.values():
            I = IdealHandle(self, basis, side)
            I.generator = self.elem_from_vec(gen)
            ideals.append(I)
        return sorted(ideals, key=lambda I: (I.dim_p, I.basis.tobytes()))

    def enumerate_ideals(self, side: str = "right", max_dim: int = CLOSURE_MAX_DIM, budget: int = PRINCIPAL_BUDGET) -> list["IdealHandle"]:
        """All one-sided ideals: principal ideals closed under sums to a fixed point."""
        if self.dim_p > max_dim:
            raise BudgetExceeded(f"dim_p(R) = {self.dim_p} exceeds closure limit {max_dim}")
        ideals = {I.key: I for I in self.enumerate_principal_ideals(side, budget)}
        frontier = list(ideals.values())
        while frontier:
            new = []
            current = list(ideals.values())
            for a in frontier:
                for b in current:
                    s = a + b
                    if s.key not in ideals:
                        ideals[s.key] = s
                        new.append(s)
            frontier = new
        return sorted(ideals.values(), key=lambda I: (I.dim_p, I.basis.tobytes()))

    def double_annihilator_check(self, L: "IdealHandle") -> bool:
        I = self.annihilator(L, "right")
        return self.annihilator(I, "left") == L

    def __repr__(self) -> str:
        return f"TwistedRing({self.sys.label()})"


def _int_to_vecs(codes: np.ndarray, p: int, N: int) -> np.ndarray:
    """Integer indices -> F_p vectors, last coordinate fastest (matches all_combinations)."""
    out = np.zeros((codes.size, N), dtype=np.int64)
    c = codes.copy()
    for i in range(N - 1, -1, -1):
        out[:, i] = c % p
        c //= p
    return out


def _row_keys(R: np.ndarray) -> np.ndarray:
    """One opaque key per matrix in a stack, for np.unique."""
    flat = np.ascontiguousarray(R.reshape(R.shape[0], -1).astype(np.int8))
    return flat.view(np.dtype((np.void, flat.shape[1])))[:, 0]


class RingElem:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: TwistedRing, coeffs):
        c = np.array(coeffs, dtype=np.int64).reshape(-1)
        if c.shape != (ring.n,):
            raise ValueError(f"expected {ring.n} coefficients, got {c.shape[0]}")
        if c.min(initial=0) < 0 or c.max(initial=0) >= ring.field.q:
            raise ValueError("coefficient out of field range")
        self.ring = ring
        self.coeffs = c

    @property
    def vec(self) -> np.ndarray:
        return self.ring.to_vec(self.coeffs)

    def _same(self, other: "RingElem") -> None:
        if not isinstance(other, RingElem) or other.ring is not self.ring:
            raise SystemMismatch("elements belong to different rings")

    def __add__(self, other):
        self._same(other)
        return RingElem(self.ring, self.ring.field.vadd(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._same(other)
        return RingElem(self.ring, self.ring.field.vsub(self.coeffs, other.coeffs))

    def __neg__(self):
        return RingElem(self.ring, self.ring.field.vneg(self.coeffs))

    def __mul__(self, other):
        if isinstance(other, RingElem):
            self._same(other)
            return RingElem(self.ring, self.ring.mul_codes(self.coeffs, other.coeffs))
        return NotImplemented

    def scale(self, a: int) -> "RingElem":
        """Left scalar multiplication (a e-bar) * self, i.e. coefficientwise."""
        return RingElem(self.ring, self.ring.field.vmul(int(a), self.coeffs))

    @property
    def support(self) -> list[int]:
        return [int(g) for g in np.nonzero(self.coeffs)[0]]

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __eq__(self, other) -> bool:
        return isinstance(other, RingElem) and other.ring is self.ring and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash(self.coeffs.tobytes())

    def tolist(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"RingElem({self.tolist()})"


def ring_mul(x: RingElem, y: RingElem) -> RingElem:
    return x * y


class IdealHandle:
    """An F_p subspace of R tagged with the side it is an ideal on."""

    def __init__(self, ring: TwistedRing, basis, side: str):
        self.ring = ring
        self.basis = np.asarray(basis, dtype=np.int64).reshape(-1, ring.dim_p)
        self.basis.flags.writeable = False
        self.side = side
        self.generator: RingElem | None = None

    @property
    def dim_p(self) -> int:
        return self.basis.shape[0]

    @cached_property
    def key(self) -> bytes:
        return bytes([self.dim_p]) + self.basis.tobytes()

    @cached_property
    def k_linear(self) -> bool:
        """Closed under coefficientwise multiplication by K."""
        R = self.ring
        if self.dim_p == 0 or R.m == 1:
            return True
        w = R.field.primitive
        M = np.kron(np.eye(R.n, dtype=np.int64), R.field.mul_by_matrix(w))
        images = (self.basis @ M.T) % R.p
        return bool(la.in_span(self.basis, images, R.p).all())

    @property
    def dim_K(self) -> int | None:
        if not self.k_linear:
            return None
        return self.dim_p // self.ring.m

    def elements_vec(self) -> np.ndarray:
        return la.span_elements(self.basis, self.ring.p)

    def elements(self) -> list[RingElem]:
        return [self.ring.elem_from_vec(v) for v in self.elements_vec()]

    def basis_elems(self) -> list[RingElem]:
        return [self.ring.elem_from_vec(v) for v in self.basis]

    def contains(self, x: RingElem) -> bool:
        return bool(la.in_span(self.basis, x.vec[None, :], self.ring.p)[0])

    def is_ideal(self) -> bool:
        return self.ring.is_ideal(self.basis, self.side)

    def __add__(self, other: "IdealHandle") -> "IdealHandle":
        side = self.side if self.side == other.side else "subspace"
        return IdealHandle(self.ring, la.subspace_sum(self.basis, other.basis, self.ring.p), side)

    def intersect(self, other: "IdealHandle") -> "IdealHandle":
        side = self.side if self.side == other.side else "subspace"
        return IdealHandle(self.ring, la.intersect(self.basis, other.basis, self.ring.p), side)

    def __le__(self, other: "IdealHandle") -> bool:
        return la.is_subspace(self.basis, other.basis, self.ring.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, IdealHandle) and other.ring is self.ring and np.array_equal(self.basis, other.basis)

    def __hash__(self) -> int:
        return hash(self.key)

    def to_json(self) -> dict:
        return {"side": self.side, "basis": [self.ring.from_vec(r).tolist() for r in self.basis]}

    def __repr__(self) -> str:
        return f"IdealHandle(side={self.side}, dim_p={self.dim_p})"


def mul_matrix(f: RingElem, side: str) -> np.ndarray:
    return f.ring.mul_matrix(f, side)


def principal_ideal(v: RingElem, side: str) -> IdealHandle:
    return v.ring.principal_ideal(v, side)


def annihilator(arg, side: str, ring: TwistedRing | None = None) -> IdealHandle:
    ring = ring or arg.ring
    return ring.annihilator(arg, side)
