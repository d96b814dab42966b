"""Codes from ideals: parameters, the |G| <= d * dim bound and its extremal case."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fplinalg as la
from .errors import BudgetExceeded, DecompositionFailed, NotKLinear, NotOneDimensional, ZeroCode
from .groups import FiniteGroup, Subgroup
from .ring import IdealHandle, RingElem, TwistedRing

DISTANCE_BUDGET = 10**7


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int | None
    k_p: int
    d: int | None

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "k_p": self.k_p, "d": self.d}

    def __str__(self) -> str:
        k = self.k if self.k is not None else f"{self.k_p}/p"
        return f"[{self.n},{k},{self.d}]"


class LinearCode:
    """Length-|G| code over K given by an F_p basis of ring elements."""

    def __init__(self, ideal: IdealHandle, budget: int = DISTANCE_BUDGET):
        self.ideal = ideal
        self.ring = ideal.ring
        self.basis = ideal.basis
        self.side = ideal.side
        self.budget = budget
        self._d = None

    @property
    def length(self) -> int:
        return self.ring.n

    @property
    def k_p(self) -> int:
        return self.ideal.dim_p

    @property
    def k_linear(self) -> bool:
        return self.ideal.k_linear

    @property
    def k(self) -> int | None:
        return self.ideal.dim_K

    def is_zero(self) -> bool:
        return self.k_p == 0

    @property
    def generator(self) -> RingElem | None:
        return self.ideal.generator

    def codewords_vec(self) -> np.ndarray:
        return la.span_elements(self.basis, self.ring.p)

    def codewords(self) -> np.ndarray:
        """All codewords as K-symbol arrays, shape (p^k_p, n)."""
        return self.ring.from_vec(self.codewords_vec())

    def _chunks(self, chunk: int = 1 << 16):
        p, k = self.ring.p, self.k_p
        total = p**k
        if total > self.budget:
            raise BudgetExceeded(f"{total} codewords exceed budget {self.budget}")
        n, m = self.ring.n, self.ring.m
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            coeffs = np.zeros((idx.size, k), dtype=np.int64)
            c = idx.copy()
            for i in range(k - 1, -1, -1):
                coeffs[:, i] = c % p
                c //= p
            words = (coeffs @ self.basis) % p
            yield words.reshape(-1, n, m).any(axis=2), words

    def min_distance(self) -> int:
        if self.is_zero():
            raise ZeroCode("the zero code has no minimum distance")
        if self._d is None:
            best = self.length
            for nz, _ in self._chunks():
                w = nz.sum(axis=1)
                w = w[w > 0]
                if w.size:
                    best = min(best, int(w.min()))
                if best == 1:
                    break
            self._d = best
        return self._d

    def min_weight_word(self) -> RingElem:
        d = self.min_distance()
        for nz, words in self._chunks():
            hits = np.nonzero(nz.sum(axis=1) == d)[0]
            if hits.size:
                return self.ring.elem_from_vec(words[hits[0]])
        raise AssertionError("minimum weight word vanished")

    def weight_distribution(self) -> np.ndarray:
        dist = np.zeros(self.length + 1, dtype=np.int64)
        for nz, _ in self._chunks():
            dist += np.bincount(nz.sum(axis=1), minlength=self.length + 1)
        return dist

    @property
    def params(self) -> CodeParams:
        d = None if self.is_zero() else self.min_distance()
        return CodeParams(self.length, self.k, self.k_p, d)

    def __repr__(self) -> str:
        return f"LinearCode({self.params}, side={self.side})"


def code_from_ideal(I: IdealHandle) -> LinearCode:
    return LinearCode(I)


def min_distance(C: LinearCode) -> int:
    return C.min_distance()


# --- S-rank and the bound -----------------------------------------------------

def s_rank(group: FiniteGroup, S) -> tuple[int, list[int]]:
    """Greedy right S-rank sequence, scanning G in index order."""
    S = sorted(set(int(s) for s in S))
    if not S:
        raise ValueError("S must be nonempty")
    T = group.table
    covered: set[int] = set()
    seq = []
    for g in range(group.n):
        Sg = {int(T[s, g]) for s in S}
        if not Sg <= covered:
            seq.append(g)
            covered |= Sg
    return len(seq), seq


def rank_K(f: RingElem) -> int:
    """rank over K of v -> f v; the image fR is a right K-space, so rank_p is divisible by m."""
    R = f.ring
    r = la.rank(R.mul_matrix(f, "left"), R.p)
    if r % R.m:
        raise AssertionError("image of left multiplication is not a K-space")
    return r // R.m


@dataclass
class ElementBound:
    support: int
    rank: int
    product: int
    n: int
    s_rank: int

    @property
    def holds(self) -> bool:
        return self.product >= self.n

    @property
    def rank_covers_s_rank(self) -> bool:
        return self.rank >= self.s_rank

    def to_json(self) -> dict:
        return {
            "support": self.support,
            "rank_K": self.rank,
            "product": self.product,
            "n": self.n,
            "s_rank": self.s_rank,
            "holds": self.holds,
            "rank_ge_s_rank": self.rank_covers_s_rank,
        }


@dataclass
class CodeBound:
    d: int
    k: int
    n: int

    @property
    def product(self) -> int:
        return self.d * self.k

    @property
    def holds(self) -> bool:
        return self.product >= self.n

    @property
    def amgm_holds(self) -> bool:
        s = self.d + self.k
        return s * s >= 4 * self.n and s <= self.n + 1

    @property
    def extremal(self) -> bool:
        return self.product == self.n

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "n": self.n,
            "product": self.product,
            "holds": self.holds,
            "amgm_holds": self.amgm_holds,
            "extremal": self.extremal,
        }


def bound_report(arg) -> ElementBound | CodeBound:
    """Element form: |supp f| * rank_K(T_f) vs |G|. Code form: d * dim_K vs |G|."""
    if isinstance(arg, RingElem):
        if arg.is_zero():
            raise ZeroCode("f must be nonzero")
        rk = rank_K(arg)
        t, _ = s_rank(arg.ring.group, arg.support)
        return ElementBound(arg.weight, rk, arg.weight * rk, arg.ring.n, t)
    C = arg if isinstance(arg, LinearCode) else LinearCode(arg)
    if not C.k_linear:
        raise NotKLinear("dim_K is undefined for a code that is not K-linear")
    if C.is_zero():
        raise ZeroCode("the bound needs a nonzero code")
    return CodeBound(C.min_distance(), C.k, C.length)


# --- extremal codes -------------------------------------------------------------

@dataclass
class ExtremalWitness:
    c: RingElem
    H: Subgroup

    def to_json(self) -> dict:
        return {"c": self.c.tolist(), "H": list(self.H.members)}


def _translate(c: RingElem, g: int, side: str) -> RingElem:
    """c * g-bar for right ideals, g-bar * c for left ideals."""
    gb = c.ring.basis_elem(g)
    return c * gb if side == "right" else gb * c


def _span_with_subgroup(c: RingElem, H, side: str) -> IdealHandle:
    """c K^alpha H (right) or K^alpha H c (left) as an F_p subspace."""
    R = c.ring
    rows = []
    op = "left" if side == "right" else "right"
    M = R.mul_matrix_vec(c.vec, op)
    for h in H:
        for i in range(R.m):
            rows.append(M[:, h * R.m + i])
    return R.ideal(np.array(rows), "subspace")


def extremal_decompose(C: LinearCode) -> ExtremalWitness:
    if not C.k_linear:
        raise NotKLinear("extremal characterization needs a K-linear code")
    if C.side not in ("right", "left"):
        raise ValueError("code must come from a one-sided ideal")
    R = C.ring
    d, k, n = C.min_distance(), C.k, C.length
    if d * k != n:
        raise ValueError(f"not extremal: d*k = {d * k} != {n}")
    c = C.min_weight_word()
    h = c.support[0]
    c = _translate(c, R.group.inv(h), C.side)
    supp = c.support
    G = R.group
    if 0 not in supp or not G.is_subgroup(supp):
        raise DecompositionFailed(f"support {supp} of translated minimum word is not a subgroup")
    H = Subgroup(G, tuple(supp))
    if H.order != d:
        raise DecompositionFailed(f"|H| = {H.order} != d = {d}")
    cKH = _span_with_subgroup(c, H, C.side)
    if cKH.dim_p != R.m:
        raise DecompositionFailed(f"dim c K^alpha H = {cKH.dim_p}/{R.m} != 1")
    if R.principal_ideal(c, C.side) != C.ideal:
        raise DecompositionFailed("c K^alpha G differs from C")
    return ExtremalWitness(c, H)


def extremal_construct(H: Subgroup, c: RingElem, side: str = "right") -> LinearCode:
    R = c.ring
    if not R.sys.is_twisted_only:
        raise ValueError("extremal construction is stated for twisted group rings (sigma trivial)")
    if not set(c.support) <= set(H.members):
        raise NotOneDimensional("c must be supported in H")
    if _span_with_subgroup(c, H, side).dim_p != R.m:
        raise NotOneDimensional("c K^alpha H is not one-dimensional")
    C = LinearCode(R.principal_ideal(c, side))
    n = R.n
    expected = (n, n // H.order, H.order)
    got = (C.length, C.k, C.min_distance())
    if got != expected:
        raise DecompositionFailed(f"constructed code {got} != expected {expected}")
    return C


# --- search -----------------------------------------------------------------------

@dataclass
class SearchHit:
    params: CodeParams
    generator: list[int]
    side: str

    def to_json(self) -> dict:
        d = self.params.to_json()
        d["generator"] = self.generator
        d["side"] = self.side
        return d


def search_codes(
    ring: TwistedRing,
    side: str = "right",
    min_d: int | None = None,
    target: tuple[int, int, int] | None = None,
    budget: int = 10**6,
):
    """Enumerate principal ideals, compute parameters, rank by (d, k) descending.

    Returns (hits, target_found).
    """
    hits = []
    found = False
    for I in ring.enumerate_principal_ideals(side, budget=budget):
        if I.dim_p == 0:
            continue
        C = LinearCode(I)
        P = C.params
        if target is not None and P.k is not None and (P.n, P.k, P.d) == tuple(target):
            found = True
        if min_d is not None and P.d < min_d:
            continue
        hits.append(SearchHit(P, I.generator.tolist() if I.generator is not None else [], side))
    hits.sort(key=lambda h: (-h.params.d, -(h.params.k if h.params.k is not None else h.params.k_p / ring.m)))
    return hits, found


def singleton_ok(P: CodeParams) -> bool:
    return P.k is None or P.d is None or P.d <= P.n - P.k + 1


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


__all__ = [
    "CodeParams",
    "LinearCode",
    "code_from_ideal",
    "min_distance",
    "s_rank",
    "rank_K",
    "bound_report",
    "extremal_decompose",
    "extremal_construct",
    "search_codes",
]
