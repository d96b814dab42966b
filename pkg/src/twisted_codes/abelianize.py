"""Monomial equivalence of low-dimension twisted group codes to abelian group codes.

Codes here are one-sided ideals of K^alpha G (sigma trivial). A monomial map
sends the coefficient at position g to position perm[g], scaled by diag[g].

The reduction works on left ideals. A right ideal of K^alpha G is first carried
to a left ideal of K^beta G with beta(x, y) = alpha(y^-1, x^-1) by g -> g^-1,
which is an anti-isomorphism of the two algebras.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import fplinalg as la
from .crossed import Cocycle, CrossedSystem, is_coboundary
from .errors import (
    BudgetExceeded,
    NotOneDimensional,
    NotScalarInvariant,
    PlanInconsistent,
    ReductionStalled,
    ScalarExtractionFailed,
    TransportObstructed,
)
from .gf import FiniteField
from .groups import FiniteGroup, Subgroup, abelian_groups, cyclic, direct_product
from .ring import IdealHandle, RingElem, TwistedRing

SEARCH_BUDGET = 10**6


# --- monomial maps -------------------------------------------------------------

@dataclass(frozen=True)
class MonomialWitness:
    perm: tuple[int, ...]
    diag: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "MonomialWitness":
        return cls(tuple(range(n)), (1,) * n)

    def apply(self, field: FiniteField, words) -> np.ndarray:
        """Apply to K-symbol rows of shape (..., n)."""
        words = np.asarray(words, dtype=np.int64)
        out = np.zeros_like(words)
        out[..., list(self.perm)] = field.vmul(words, np.array(self.diag))
        return out

    def then(self, other: "MonomialWitness", field: FiniteField) -> "MonomialWitness":
        """self followed by other."""
        perm = tuple(other.perm[p] for p in self.perm)
        diag = tuple(field.mul(d, other.diag[p]) for d, p in zip(self.diag, self.perm))
        return MonomialWitness(perm, diag)

    def is_permutation(self) -> bool:
        return all(d == 1 for d in self.diag)

    def to_json(self) -> dict:
        return {"perm": list(self.perm), "diag": list(self.diag)}


def apply_to_ideal(I: IdealHandle, w: MonomialWitness, target: TwistedRing, side: str) -> IdealHandle:
    src = I.ring
    words = src.from_vec(I.basis)
    return target.ideal(target.to_vec(w.apply(src.field, words)), side)


# --- scalar actions --------------------------------------------------------------

@dataclass
class ScalarAction:
    N: Subgroup
    lam: dict[int, int]
    side: str = "left"

    def compatibility_violations(self, alpha: Cocycle, F: FiniteField) -> list[tuple[int, int]]:
        """Pairs with lambda(uv) alpha(u, v) != lambda(u) lambda(v)."""
        T = self.N.parent.table
        bad = []
        for u in self.N:
            for v in self.N:
                lhs = F.mul(self.lam[int(T[u, v])], alpha(u, v))
                if lhs != F.mul(self.lam[u], self.lam[v]):
                    bad.append((u, v))
        return bad

    def to_json(self) -> dict:
        return {"N": list(self.N.members), "lambda": {str(k): v for k, v in self.lam.items()}}


def _basis_words(I: IdealHandle) -> np.ndarray:
    return I.ring.from_vec(I.basis)


def _act(ring: TwistedRing, u: int, words: np.ndarray, side: str) -> np.ndarray:
    """u-bar * x (side='left') or x * u-bar (side='right') on K-symbol rows."""
    F, G, alpha = ring.field, ring.group, ring.sys.alpha.tab
    out = np.zeros_like(words)
    g = np.arange(G.n)
    if side == "left":
        out[:, G.table[u, g]] = F.vmul(words, alpha[u, g])
    else:
        out[:, G.table[g, u]] = F.vmul(words, alpha[g, u])
    return out


def _scalar_ratio(F: FiniteField, image: np.ndarray, words: np.ndarray) -> int | None:
    """The unique c with image = c * words (rows), or None."""
    nz = np.argwhere(words != 0)
    if nz.size == 0:
        return 1
    r, c = nz[0]
    lam = F.div(int(image[r, c]), int(words[r, c]))
    if lam == 0 or not np.array_equal(F.vmul(words, lam), image):
        return None
    return lam


def detect_scalar_action(I: IdealHandle, N, side: str | None = None) -> ScalarAction | None:
    ring = I.ring
    side = side or ("right" if I.side == "right" else "left")
    N = N if isinstance(N, Subgroup) else ring.group.subgroup(N)
    words = _basis_words(I)
    lam = {}
    for u in N:
        c = _scalar_ratio(ring.field, _act(ring, u, words, side), words)
        if c is None:
            return None
        lam[u] = c
    return ScalarAction(N, lam, side)


def dim1_untwist(I: IdealHandle):
    """For a 1-dimensional ideal: lambda with g-bar v = lambda(g) v and the untwisting diagonal.

    Returns (lam array, MonomialWitness, image ideal in the untwisted ring).
    """
    ring = I.ring
    if I.dim_K != 1:
        raise NotOneDimensional(f"dim_K = {I.dim_K}")
    side = "right" if I.side == "right" else "left"
    act = detect_scalar_action(I, ring.group.full(), side)
    if act is None:
        raise ScalarExtractionFailed("G does not act by scalars on a 1-dimensional ideal")
    F, G = ring.field, ring.group
    lam = np.array([act.lam[g] for g in range(G.n)], dtype=np.int64)
    delta = F.vmul(F.vmul(lam[:, None], lam[None, :]), F.vinv(lam[G.table]))
    if not np.array_equal(delta, ring.sys.alpha.tab):
        raise ScalarExtractionFailed("alpha differs from the coboundary of the extracted lambda")
    w = MonomialWitness(tuple(range(G.n)), tuple(int(x) for x in lam))
    target = TwistedRing(CrossedSystem(F, G))
    return lam, w, apply_to_ideal(I, w, target, I.side)


def untwist_by(ring: TwistedRing, mu) -> tuple[MonomialWitness, TwistedRing]:
    """g-bar -> mu(g) g-hat is an isomorphism K^alpha G -> KG when alpha = delta(mu)."""
    G = ring.group
    w = MonomialWitness(tuple(range(G.n)), tuple(int(x) for x in mu))
    return w, TwistedRing(CrossedSystem(ring.field, G))


def opposite(I: IdealHandle) -> tuple[MonomialWitness, IdealHandle]:
    """Carry a right ideal of K^alpha G to a left ideal of K^beta G, beta(x,y) = alpha(y^-1, x^-1)."""
    ring = I.ring
    G = ring.group
    inv = G.inverse
    beta = ring.sys.alpha.tab[inv[None, :], inv[:, None]]
    target = TwistedRing(CrossedSystem(ring.field, G, alpha=Cocycle(beta)))
    w = MonomialWitness(tuple(int(x) for x in inv), (1,) * G.n)
    side = {"right": "left", "left": "right"}.get(I.side, I.side)
    return w, apply_to_ideal(I, w, target, side)


# --- transport ---------------------------------------------------------------------

def subgroup_as_group(N: Subgroup, name: str | None = None) -> tuple[FiniteGroup, list[int]]:
    """N as a standalone group; returns it and the list of parent indices (position = new index)."""
    members = list(N.members)
    pos = {g: i for i, g in enumerate(members)}
    T = N.parent.table
    table = np.array([[pos[int(T[a, b])] for b in members] for a in members], dtype=np.int64)
    return FiniteGroup(table, name=name or f"N{len(members)}", validate=False), members


@dataclass
class TransportPlan:
    N: Subgroup
    H: FiniteGroup
    F_members: tuple[int, ...]
    g_reps: list[int]
    h_reps: list[int]
    tau: dict[int, int]
    coset_of: np.ndarray
    k_table: np.ndarray
    u_table: np.ndarray
    v_table: np.ndarray

    def check(self, G: FiniteGroup) -> None:
        """Raise PlanInconsistent unless the coset data match on both sides."""
        H = self.H
        Fset = set(self.F_members)
        if len(Fset) != self.N.order or len(self.g_reps) != len(self.h_reps):
            raise PlanInconsistent("|N| != |F| or representative counts differ")
        if not H.is_normal(tuple(sorted(Fset))):
            raise PlanInconsistent("F is not normal in H")
        if sorted(self.tau.values()) != sorted(Fset) or self.tau.get(0) != 0:
            raise PlanInconsistent("tau is not a bijection N -> F fixing the identity")
        s = len(self.g_reps)
        Hinv = H.inverse
        for i in range(s):
            for j in range(s):
                k = self.k_table[i, j]
                gi, gj, gk = self.g_reps[i], self.g_reps[j], self.g_reps[k]
                if G.mul(gi, gj) != G.mul(gk, int(self.u_table[i, j])):
                    raise PlanInconsistent(f"g_{i} g_{j} != g_{k} u_ij")
                hi, hj, hk = self.h_reps[i], self.h_reps[j], self.h_reps[k]
                v = int(self.v_table[i, j])
                if v not in Fset or H.mul(hi, hj) != H.mul(hk, v):
                    raise PlanInconsistent(f"h_{i} h_{j} != h_{k} v_ij")
                if int(H.table[Hinv[hk], H.mul(hi, hj)]) not in Fset:
                    raise PlanInconsistent("coset multiplication differs between G/N and H/F")

    def to_json(self) -> dict:
        return {
            "N": list(self.N.members),
            "H": self.H.spec() if hasattr(self.H, "spec") else self.H.name,
            "F": list(self.F_members),
            "g_reps": self.g_reps,
            "h_reps": self.h_reps,
            "tau": {str(k): v for k, v in self.tau.items()},
        }


def make_plan(G: FiniteGroup, N: Subgroup, factor: str = "cyclic") -> TransportPlan:
    """H = A x G/N with F = A x {e}; A = N itself (factor='same') or cyclic of order |N|."""
    Q, coset_of, reps = G.quotient(N)
    if factor == "same":
        A, members = subgroup_as_group(N, name="N")
        tau = {g: i * Q.n for i, g in enumerate(members)}
    else:
        A = cyclic(N.order)
        if G.is_cyclic(N.members) and N.order > 1:
            z = next(g for g in N if G.element_order(g) == N.order)
            tau = {G.power(z, k): k * Q.n for k in range(N.order)}
        else:
            tau = {g: i * Q.n for i, g in enumerate(N.members)}
    H = direct_product(A, Q)
    H.name = f"{A.name}x{G.name}/N"
    s = Q.n
    h_reps = list(range(s))  # (e, i)
    F_members = tuple(a * s for a in range(A.n))
    k_table = Q.table.copy()
    Ginv = G.inverse
    u_table = np.zeros((s, s), dtype=np.int64)
    v_table = np.zeros((s, s), dtype=np.int64)
    for i in range(s):
        for j in range(s):
            k = k_table[i, j]
            u_table[i, j] = G.table[Ginv[reps[k]], G.mul(reps[i], reps[j])]
            v_table[i, j] = 0
    plan = TransportPlan(N, H, F_members, list(reps), h_reps, tau, coset_of, k_table, u_table, v_table)
    plan.check(G)
    return plan


@dataclass
class TransportResult:
    image: IdealHandle
    witness: MonomialWitness
    plan: TransportPlan
    coset_untwist: list[int]
    relation_violations: int
    literal_relation_violations: int
    literal_phi_is_ideal: bool

    def to_json(self) -> dict:
        return {
            "plan": self.plan.to_json(),
            "witness": self.witness.to_json(),
            "coset_untwist": self.coset_untwist,
            "relation_violations": self.relation_violations,
            "literal_relation_violations": self.literal_relation_violations,
            "literal_phi_is_ideal": self.literal_phi_is_ideal,
        }


def _coset_vectors(ring: TwistedRing, action: ScalarAction, plan: TransportPlan) -> np.ndarray:
    """y_i = sum_{u in N} alpha(u, g_i) / lambda(u) * (u g_i)-bar, one row per coset."""
    F, G, alpha = ring.field, ring.group, ring.sys.alpha
    Y = np.zeros((len(plan.g_reps), G.n), dtype=np.int64)
    for i, gi in enumerate(plan.g_reps):
        for u in action.N:
            Y[i, G.mul(u, gi)] = F.div(alpha(u, gi), action.lam[u])
    return Y


def scalar_transport(I: IdealHandle, action: ScalarAction, plan: TransportPlan) -> TransportResult:
    """Monomial map of a left ideal on which N acts by scalars into an ideal of KH.

    Elements of I satisfy a_{ug} = alpha(u, g) a_g / lambda(u), so I sits inside the span of
    the coset vectors y_i, and G permutes the y_i up to scalars. Those scalars form a cocycle
    on G/N; when it is a coboundary a per-coset rescaling mu turns the action into a plain
    permutation, and x = sum b_i y_i maps to sum (b_i / mu_i) h_i F-sum in KH.
    """
    ring = I.ring
    F, G, alpha = ring.field, ring.group, ring.sys.alpha
    if I.side not in ("left", "two-sided"):
        raise ValueError("scalar_transport expects a left ideal; use opposite() for right ideals")
    if action.side != "left" or not G.is_normal(action.N.members):
        raise PlanInconsistent("N must act on the left and be normal")
    words = _basis_words(I)
    n, s = G.n, len(plan.g_reps)
    Ginv = G.inverse

    # coefficient relations, checked on every basis word
    bad = bad_lit = 0
    for u in action.N:
        lam = action.lam[u]
        ug = G.table[u, np.arange(n)]
        correct = F.vmul(words, F.vmul(alpha.tab[u, np.arange(n)], F.inv(lam)))
        bad += int(np.count_nonzero(words[:, ug] != correct))
        lit_scalar = F.vmul(F.vmul(alpha.tab[u, np.arange(n)], lam), F.inv(alpha(Ginv[u], u)))
        bad_lit += int(np.count_nonzero(words[:, ug] != F.vmul(words, lit_scalar)))
    if bad:
        raise NotScalarInvariant(f"{bad} coefficients violate a_(ug) = alpha(u,g) a_g / lambda(u)")

    # projective permutation action of G/N on the coset vectors
    Y = _coset_vectors(ring, action, plan)
    c = np.zeros((s, s), dtype=np.int64)  # g_j-bar y_i = c[j, i] y_{k(j, i)}
    for j, gj in enumerate(plan.g_reps):
        img = _act(ring, gj, Y, "left")
        for i in range(s):
            k = plan.k_table[j, i]
            r = _scalar_ratio(F, img[i : i + 1], Y[k : k + 1])
            if r is None:
                raise PlanInconsistent("a representative does not map coset vectors to multiples of coset vectors")
            c[j, i] = r
    Q, _, _ = G.quotient(action.N)
    beta = np.zeros((s, s), dtype=np.int64)  # M_j M_l = beta(j, l) M_{jl} on the y basis
    for j in range(s):
        for l in range(s):
            jl = plan.k_table[j, l]
            beta[j, l] = F.div(F.mul(c[j, int(plan.k_table[l, 0])], c[l, 0]), c[jl, 0])
    nu = is_coboundary(Cocycle(beta), F, Q)
    if nu is None:
        raise TransportObstructed("the induced cocycle on G/N is not a coboundary")
    nu = np.asarray(nu, dtype=np.int64)
    # genuine monomial representation c'_j(i) = c[j,i] / nu_j; mu_i = c'_i(0)
    mu = [F.div(int(c[i, 0]), int(nu[i])) for i in range(s)]

    perm = np.zeros(n, dtype=np.int64)
    diag = np.zeros(n, dtype=np.int64)
    H = plan.H
    for x in range(n):
        i = int(plan.coset_of[x])
        u = int(G.table[x, Ginv[plan.g_reps[i]]])
        perm[x] = H.mul(plan.h_reps[i], plan.tau[u])
        diag[x] = F.div(action.lam[u], F.mul(alpha(u, plan.g_reps[i]), mu[i]))
    if len(set(perm.tolist())) != n:
        raise PlanInconsistent("position map is not a bijection")
    w = MonomialWitness(tuple(int(p) for p in perm), tuple(int(d) for d in diag))
    target = TwistedRing(CrossedSystem(F, H))
    image = apply_to_ideal(I, w, target, "left")
    if image.dim_p != I.dim_p or not image.is_ideal():
        raise TransportObstructed("image of the transport is not a left ideal of the same dimension")

    # the map exactly as first written, for the record
    lit_diag = np.zeros(n, dtype=np.int64)
    for x in range(n):
        i = int(plan.coset_of[x])
        gi = plan.g_reps[i]
        u = int(G.table[x, Ginv[gi]])
        num = alpha(u, int(G.table[gi, Ginv[x]]))
        lit_diag[x] = F.div(num, F.mul(alpha(u, gi), action.lam[u]))
    lit = apply_to_ideal(I, MonomialWitness(w.perm, tuple(int(d) for d in lit_diag)), target, "left")
    return TransportResult(image, w, plan, [int(m) for m in mu], bad, bad_lit, bool(lit.is_ideal()))


# --- equivalence search -------------------------------------------------------------

def weight_distribution_words(words: np.ndarray, n: int) -> np.ndarray:
    return np.bincount((words != 0).sum(axis=1), minlength=n + 1)


def _codewords(I: IdealHandle) -> np.ndarray:
    return I.ring.from_vec(I.elements_vec())


def equivalence_search(C1: IdealHandle, C2: IdealHandle, mode: str = "monomial", budget: int = SEARCH_BUDGET) -> MonomialWitness | None:
    """Backtracking over column images and scalars; None when no map exists.

    Partial assignments are pruned by requiring the punctured codes on the assigned
    columns to coincide.
    """
    if C1.ring.field != C2.ring.field:
        raise ValueError("codes over different fields")
    F = C1.ring.field
    n = C1.ring.n
    if C2.ring.n != n or C1.dim_p != C2.dim_p:
        return None
    W1, W2 = _codewords(C1), _codewords(C2)
    if not np.array_equal(weight_distribution_words(W1, n), weight_distribution_words(W2, n)):
        return None
    q = F.q
    scalars = [1] if mode == "permutation" else list(range(1, q))
    powers = q ** np.arange(n, dtype=np.int64)
    nodes = 0

    def punct_keys(W, cols, diag=None):
        sub = W[:, cols]
        if diag is not None:
            sub = F.vmul(sub, np.array(diag))
        return np.unique(sub @ powers[: len(cols)])

    target_cache: dict[tuple, np.ndarray] = {}
    perm: list[int] = []
    diag: list[int] = []
    used = [False] * n

    def search(col: int) -> bool:
        nonlocal nodes
        if col == n:
            return True
        for t in range(n):
            if used[t]:
                continue
            tcols = tuple(perm + [t])
            if tcols not in target_cache:
                target_cache[tcols] = punct_keys(W2, list(tcols))
            for a in scalars if col > 0 or mode == "permutation" else [1]:
                nodes += 1
                if nodes > budget:
                    raise BudgetExceeded(f"equivalence search exceeded {budget} nodes")
                keys = punct_keys(W1, list(range(col + 1)), diag + [a])
                if keys.shape == target_cache[tcols].shape and np.array_equal(keys, target_cache[tcols]):
                    perm.append(t)
                    diag.append(a)
                    used[t] = True
                    if search(col + 1):
                        return True
                    perm.pop()
                    diag.pop()
                    used[t] = False
        return False

    # the first column's scalar can be normalized to 1 for monomial maps
    if not search(0):
        return None
    w = MonomialWitness(tuple(perm), tuple(diag))
    if not _maps_onto(C1, C2, w):
        raise AssertionError("equivalence witness failed its recheck")
    return w


def _maps_onto(C1: IdealHandle, C2: IdealHandle, w: MonomialWitness) -> bool:
    F = C1.ring.field
    img = C2.ring.to_vec(w.apply(F, C1.ring.from_vec(C1.basis)))
    return la.rank(img, C2.ring.p) == C1.dim_p and bool(la.in_span(C2.basis, img, C2.ring.p).all())


# --- reduction --------------------------------------------------------------------

@dataclass
class ReductionStep:
    kind: str
    witness: MonomialWitness
    group: FiniteGroup
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = {"kind": self.kind, "target_group": self.group.spec() if hasattr(self.group, "spec") else self.group.name}
        d.update(self.witness.to_json())
        d.update(self.detail)
        return d


@dataclass
class AbelianReduction:
    source: IdealHandle
    image: IdealHandle
    chain: list[ReductionStep]
    notes: list[str]
    dichotomy: dict | None = None

    @property
    def composed(self) -> MonomialWitness:
        F = self.source.ring.field
        w = MonomialWitness.identity(self.source.ring.n)
        for step in self.chain:
            w = w.then(step.witness, F)
        return w

    @property
    def route(self) -> list[str]:
        return [s.kind for s in self.chain]

    def verify(self) -> bool:
        """Composed map sends the source code bijectively onto the final abelian group code."""
        G = self.image.ring.group
        if not G.is_abelian or not self.image.ring.sys.is_untwisted:
            return False
        if not self.image.is_ideal():
            return False
        return _maps_onto(self.source, self.image, self.composed)

    def to_json(self) -> dict:
        return {
            "route": self.route,
            "chain": [s.to_json() for s in self.chain],
            "final_group": self.image.ring.group.name,
            "dim_K": self.image.dim_K,
            "notes": self.notes,
            "dichotomy": self.dichotomy,
        }


def _subideal_generators(I: IdealHandle, dim_K: int) -> list[RingElem]:
    """Elements v of I whose generated ideal (same side) has the given K-dimension."""
    ring = I.ring
    op = "right" if I.side == "left" else "left"
    elems = I.elements_vec()[1:]
    if len(elems) == 0:
        return []
    ranks = la.batched_rank(ring.batched_mul_matrices(elems, op), ring.p)
    return [ring.elem_from_vec(v) for v in elems[ranks == dim_K * ring.m]]


def dim3_dichotomy(I: IdealHandle, M: IdealHandle) -> dict:
    """beta_3(g) from g-bar v3 = b1 v1 + b2 v2 + b3 v3; checks both dichotomy statements."""
    ring = I.ring
    F, G, alpha = ring.field, ring.group, ring.sys.alpha
    p, m = ring.p, ring.m
    w = F.primitive
    Kbasis = lambda v: np.array([(v.scale(F.pow(w, i))).vec for i in range(m)])  # noqa: E731
    v3 = next(x for x in I.basis_elems() if not M.contains(x))
    B = np.vstack([M.basis, Kbasis(v3)])
    beta3 = []
    for g in range(G.n):
        y = ring.basis_elem(g) * v3
        R, piv = la.rref(np.hstack([B.T, y.vec[:, None]]), p)
        if B.shape[0] in piv:
            raise AssertionError("g-bar v3 left the ideal")
        coords = np.zeros(B.shape[0], dtype=np.int64)
        for r, c_ in enumerate(piv):
            coords[c_] = R[r, -1]
        tail = coords[M.dim_p :]
        beta3.append(int(sum(F.mul(int(t), F.pow(w, i)) for i, t in enumerate(tail)) if m > 1 else int(tail[0])))
    nonzero = [b != 0 for b in beta3]
    all_or_none = all(nonzero) or not any(nonzero)
    T = G.table
    mult_ok = all(
        F.mul(alpha(g, h), beta3[int(T[g, h])]) == F.mul(beta3[g], beta3[h]) for g in range(G.n) for h in range(G.n)
    )
    return {"beta3": beta3, "all_nonzero": all(nonzero), "all_or_none": all_or_none, "multiplicative": mult_ok}


def _candidate_normals(G: FiniteGroup) -> list[tuple[Subgroup, str]]:
    """Normal N with G/N abelian (commutator subgroup first), each with its target factor."""
    Gp = G.commutator_subgroup()
    out = [(Gp, "same")]
    others = [N for N in G.normal_subgroups() if set(Gp.members) <= set(N.members) and N.members != Gp.members]
    for N in sorted(others, key=lambda N: -N.order):
        out.append((N, "cyclic"))
    return out


def _abelian_targets(field: FiniteField, n: int, dim_p: int):
    for A in abelian_groups(n):
        ring = TwistedRing(CrossedSystem(field, A))
        try:
            ideals = ring.enumerate_ideals("left")
        except BudgetExceeded:
            ideals = ring.enumerate_principal_ideals("left")
        for J in ideals:
            if J.dim_p == dim_p and J.k_linear:
                yield J


def abelian_reduce(I: IdealHandle, budget: int = SEARCH_BUDGET, search: bool = True) -> AbelianReduction:
    ring = I.ring
    if not ring.sys.is_twisted_only:
        raise ValueError("abelian_reduce needs sigma trivial")
    k = I.dim_K
    if k is None or not 1 <= k <= 3:
        raise ValueError(f"dim_K must be 1, 2 or 3, got {k}")
    F = ring.field
    chain: list[ReductionStep] = []
    notes: list[str] = []
    dichotomy = None
    cur = I
    if cur.side == "right" and not (ring.group.is_abelian and ring.sys.is_untwisted):
        w, cur = opposite(cur)
        chain.append(ReductionStep("opposite", w, cur.ring.group))
    max_steps = int(math.log2(ring.n)) + 3
    for _ in range(max_steps):
        R = cur.ring
        G = R.group
        if G.is_abelian and R.sys.is_untwisted:
            return AbelianReduction(I, cur, chain, notes, dichotomy)
        if not R.sys.is_untwisted:
            if k == 1:
                _, w, img = dim1_untwist(cur)
                chain.append(ReductionStep("dim1-untwist", w, G))
                cur = img
                continue
            sub1 = _subideal_generators(cur, 1)
            if sub1:
                lam, w, _ = dim1_untwist(R.principal_ideal(sub1[0], cur.side))
                w, target = untwist_by(R, lam)
                cur = apply_to_ideal(cur, w, target, cur.side)
                chain.append(ReductionStep("dim1-subideal-untwist", w, G))
                continue
            if k == 3:
                sub2 = _subideal_generators(cur, 2)
                if sub2:
                    M = R.principal_ideal(sub2[0], cur.side)
                    dichotomy = dim3_dichotomy(cur, M)
                    if not (dichotomy["all_or_none"] and dichotomy["multiplicative"]):
                        notes.append("dim-3 dichotomy assertion failed")
            mu = is_coboundary(R.sys.alpha, F, G)
            if mu is not None:
                w, target = untwist_by(R, mu)
                cur = apply_to_ideal(cur, w, target, cur.side)
                chain.append(ReductionStep("coboundary-untwist", w, G))
                continue
        moved = False
        for N, factor in _candidate_normals(G):
            act = detect_scalar_action(cur, N, "left")
            if act is None:
                if factor == "same" and k == 2:
                    notes.append("commutator subgroup does not act by scalars on this 2-dimensional ideal")
                continue
            if act.compatibility_violations(R.sys.alpha, F):
                notes.append("scalar action violates lambda(uv) alpha(u,v) = lambda(u) lambda(v)")
                continue
            if N.order == 1 and R.sys.is_untwisted:
                continue  # identity transport, no progress
            try:
                tr = scalar_transport(cur, act, make_plan(G, N, factor))
            except TransportObstructed as exc:
                notes.append(f"transport over |N|={N.order} obstructed: {exc}")
                continue
            H = tr.plan.H
            detail = {
                "N": list(N.members),
                "coset_untwist": tr.coset_untwist,
                "literal_relation_violations": tr.literal_relation_violations,
                "literal_phi_is_ideal": tr.literal_phi_is_ideal,
            }
            chain.append(ReductionStep("scalar-transport", tr.witness, H, detail))
            if not H.is_abelian:
                notes.append(f"transport target {H.name} is not abelian; recursing")
            cur = tr.image
            moved = True
            break
        if moved:
            continue
        if search:
            for J in _abelian_targets(F, G.n, cur.dim_p):
                w = equivalence_search(cur, J, "monomial", budget)
                if w is not None:
                    chain.append(ReductionStep("equivalence-search", w, J.ring.group))
                    notes.append("reached an abelian group code by exhaustive equivalence search")
                    return AbelianReduction(I, J, chain, notes, dichotomy)
        raise ReductionStalled(
            f"no scalar transport or abelian equivalent for a dim {k} ideal of {R.sys.label()}; notes: {notes}"
        )
    raise ReductionStalled(f"no abelian target after {max_steps} steps; notes: {notes}")


__all__ = [
    "MonomialWitness",
    "ScalarAction",
    "TransportPlan",
    "detect_scalar_action",
    "dim1_untwist",
    "scalar_transport",
    "equivalence_search",
    "abelian_reduce",
]
