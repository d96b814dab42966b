"""Exhaustive checks of every acceptance criterion over the catalog.

Each check returns a CheckResult; the CLI `catalog` command and the acceptance
tests both run these.
"""
from __future__ import annotations

import functools
import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from . import groups as gr
from .abelianize import abelian_reduce, equivalence_search
from .catalog import by_name, catalog, field as make_field, stretch_systems, twisted_c2_f3
from .checkable import code_checkable_scan
from .codes import LinearCode, bound_report, extremal_construct, extremal_decompose, search_codes
from .crossed import CrossedSystem, coboundary_from_lambda, enumerate_cocycles, is_coboundary
from .errors import BudgetExceeded, DecompositionFailed, ReductionStalled
from .hatgroup import HatGroup, hat_axioms_report, hat_transfer_report, psi_is_surjective, psi_multiplicativity_violations
from .ring import TwistedRing


@dataclass
class CheckResult:
    key: str
    title: str
    passed: bool
    seconds: float
    detail: dict = field(default_factory=dict)
    gating: bool = True

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        if not self.gating:
            status += " (non-gating)"
        return f"[{status}] {self.key}: {self.title} ({self.seconds:.2f}s) {self.detail.get('summary', '')}"

    def to_json(self) -> dict:
        return {"key": self.key, "title": self.title, "passed": self.passed, "gating": self.gating, "seconds": self.seconds, "detail": self.detail}


def _timed(fn):
    @functools.wraps(fn)
    def run(*args, **kwargs):
        t = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t
        return res

    return run


_RINGS: dict[str, TwistedRing] = {}


def ring_for(name: str) -> TwistedRing:
    if name not in _RINGS:
        _RINGS[name] = TwistedRing(by_name(name).system)
    return _RINGS[name]


def _principal_codes(R: TwistedRing, sides=("left", "right")):
    for side in sides:
        for I in R.enumerate_principal_ideals(side):
            if I.dim_p:
                yield side, I


# --- cocycles -------------------------------------------------------------------------

def cocycle_identity_violations(alpha: np.ndarray, K, G) -> int:
    """Count triples breaking alpha(x,y) alpha(xy,z) = alpha(y,z) alpha(x,yz) (sigma trivial)."""
    T = G.table
    n = G.n
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    lhs = K.vmul(alpha[x, y], alpha[T[x, y], z])
    rhs = K.vmul(alpha[y, z], alpha[x, T[y, z]])
    return int(np.count_nonzero(lhs != rhs))


@_timed
def check_coboundaries(samples: int = 500, seed: int = 0) -> CheckResult:
    """Coboundaries of random lambda satisfy every cocycle identity."""
    rng = np.random.default_rng(seed)
    pairs = [(g, q) for g in ["C2", "C3", "C4", "C6", "S3"] for q in (3, 4)]
    built = [(gr.builtin(g), make_field(q)) for g, q in pairs]
    bad = 0
    for s in range(samples):
        G, K = built[s % len(built)]
        lam = rng.integers(1, K.q, size=G.n)
        lam[0] = 1
        alpha = coboundary_from_lambda(lam, K, G)
        bad += cocycle_identity_violations(alpha.tab, K, G)
    return CheckResult("1", "cocycle validation of coboundaries", bad == 0, 0.0, {"samples": samples, "violations": bad, "summary": f"{samples} samples, {bad} violations"})


# --- hat group -------------------------------------------------------------------------

@_timed
def check_hat_axioms(max_order: int = 64) -> CheckResult:
    failures, checked = [], 0
    for e in catalog():
        q, n = e.system.field.q, e.system.n
        if (q - 1) * n > max_order:
            continue
        rep = hat_axioms_report(e.system)
        checked += 1
        if not rep.ok:
            failures.append(e.name)
    c2 = HatGroup(twisted_c2_f3())
    c2_is_c4 = sorted(c2.group.element_orders.tolist()) == [1, 2, 4, 4]
    f4s3 = HatGroup(CrossedSystem(make_field(4), gr.symmetric(3))).order == 18
    ok = not failures and c2_is_c4 and f4s3
    return CheckResult(
        "2",
        "hat group axioms, inverse and power formulas",
        ok,
        0.0,
        {"systems": checked, "failures": failures, "twisted_C2_is_C4": c2_is_c4, "F4_S3_order_18": f4s3, "summary": f"{checked} systems, {len(failures)} failures"},
    )


@_timed
def check_psi() -> CheckResult:
    bad, nonsurj, checked = 0, [], 0
    for e in catalog():
        hat = HatGroup(e.system)
        R = TwistedRing(e.system)
        bad += len(psi_multiplicativity_violations(hat, R))
        if not psi_is_surjective(hat, R):
            nonsurj.append(e.name)
        checked += 1
    return CheckResult("3", "psi is a surjective algebra map", bad == 0 and not nonsurj, 0.0, {"systems": checked, "violations": bad, "not_surjective": nonsurj, "summary": f"{checked} systems, {bad} violations"})


TRANSFER_TABLE = {
    ("S3", 2): (True, True),
    ("S3", 3): (False, True),
    ("A4", 2): (False, False),
    ("A4", 3): (True, True),
    ("C6", 2): (True, True),
    ("Q8", 2): (True, False),
    ("V4", 2): (True, False),
}


@_timed
def check_transfer() -> CheckResult:
    table_bad = []
    for (g, p), (nil, cyc) in TRANSFER_TABLE.items():
        G = gr.builtin(g)
        if (G.is_p_nilpotent(p)[0], G.has_cyclic_sylow(p)) != (nil, cyc):
            table_bad.append((g, p))
    systems = [e.system for e in catalog() if e.system.group.name in {g for g, _ in TRANSFER_TABLE}]
    A4 = gr.builtin("A4")
    systems += [CrossedSystem(make_field(q), A4) for q in (2, 3, 4)]
    disagreements = []
    for s in systems:
        rep = hat_transfer_report(s)
        if not (rep.p_nilpotency_agrees and rep.sylow_cyclicity_agrees):
            disagreements.append(s.label())
    ok = not table_bad and not disagreements
    return CheckResult("4", "p-nilpotency and Sylow cyclicity transfer to the hat group", ok, 0.0, {"table_mismatches": table_bad, "systems": len(systems), "disagreements": disagreements, "summary": f"{len(systems)} systems, {len(disagreements)} disagreements"})


# --- checkability -----------------------------------------------------------------------

CHECKABLE_POSITIVE = ["F2[C4]", "F2[C6]", "F4[C2;frob]", "F3^a[C2]"]
CHECKABLE_NEGATIVE = "F2[V4]"


@_timed
def check_checkable(jobs: int = 1) -> CheckResult:
    rows = {}
    frob_bad = 0
    for name in CHECKABLE_POSITIVE + [CHECKABLE_NEGATIVE]:
        rep = code_checkable_scan(ring_for(name), jobs=jobs)
        rows[name] = {"ideals": len(rep.ideals), "hypothesis": rep.hypothesis_holds, "all_checkable": rep.all_checkable}
        frob_bad += sum(not c.frobenius_consistent for c in rep.ideals)
    ok = all(rows[n]["all_checkable"] for n in CHECKABLE_POSITIVE) and not rows[CHECKABLE_NEGATIVE]["all_checkable"] and frob_bad == 0
    return CheckResult("5", "code-checkability scan", ok, 0.0, {"rows": rows, "frobenius_disagreements": frob_bad, "summary": f"negative control all_checkable={rows[CHECKABLE_NEGATIVE]['all_checkable']}, {frob_bad} Frobenius disagreements"})


@_timed
def check_double_annihilator() -> CheckResult:
    bad, total = 0, 0
    for name in ["F2[C4]", "F4[C2;frob]"]:
        R = ring_for(name)
        for L in R.enumerate_ideals("left"):
            total += 1
            bad += not R.double_annihilator_check(L)
    return CheckResult("6", "double annihilator on left ideals", bad == 0, 0.0, {"ideals": total, "failures": bad, "summary": f"{total} left ideals, {bad} failures"})


# --- bound ---------------------------------------------------------------------------------

@_timed
def check_bound() -> CheckResult:
    elem_bad, elem_total = 0, {}
    for name in ["F2[S3]", "F3[S3]"]:
        R = ring_for(name)
        vecs = R.all_vectors()[1:]
        elem_total[name] = len(vecs)
        for v in vecs:
            rep = bound_report(R.elem_from_vec(v))
            elem_bad += (not rep.holds) + (not rep.rank_covers_s_rank)
    code_bad, amgm_bad, codes, skipped = 0, 0, 0, 0
    for e in catalog():
        R = TwistedRing(e.system)
        for _, I in _principal_codes(R):
            if not I.k_linear:
                skipped += 1
                continue
            rep = bound_report(LinearCode(I))
            codes += 1
            code_bad += not rep.holds
            amgm_bad += not rep.amgm_holds
    ok = elem_bad == 0 and code_bad == 0 and amgm_bad == 0 and elem_total == {"F2[S3]": 63, "F3[S3]": 728}
    return CheckResult(
        "7",
        "support-rank bound and d*dim bound",
        ok,
        0.0,
        {"elements": elem_total, "element_violations": elem_bad, "codes": codes, "code_violations": code_bad, "amgm_violations": amgm_bad, "skipped_not_K_linear": skipped, "summary": f"{sum(elem_total.values())} elements, {codes} codes, {elem_bad + code_bad + amgm_bad} violations"},
    )


# --- extremal --------------------------------------------------------------------------------

def _one_dim_elements(R: TwistedRing, H, limit: int):
    """Elements c supported in H with dim_K(c K^alpha H) = 1."""
    from .fplinalg import batched_rank

    m = R.m
    cols = np.array([h * m + i for h in H for i in range(m)])
    combos = np.array(list(itertools.product(range(R.p), repeat=len(cols))), dtype=np.int64)[1:]
    vecs = np.zeros((len(combos), R.dim_p), dtype=np.int64)
    vecs[:, cols] = combos
    Ms = R.batched_mul_matrices(vecs, "left")[:, :, cols]
    ranks = batched_rank(Ms, R.p)
    return [R.elem_from_vec(v) for v in vecs[ranks == m][:limit]]


@_timed
def check_extremal(per_subgroup: int = 2) -> CheckResult:
    decomposed, failures, required = 0, [], set()
    for e in catalog():
        s = e.system
        R = TwistedRing(s)
        for side, I in _principal_codes(R):
            if not I.k_linear:
                continue
            C = LinearCode(I)
            if C.min_distance() * C.k != C.length:
                continue
            try:
                w = extremal_decompose(C)
                decomposed += 1
                required.add((e.name, C.length, C.k, C.min_distance()))
                assert w.H.order == C.min_distance()
            except DecompositionFailed as exc:
                failures.append(f"{e.name} {side} {C.params}: {exc}")
    trips, trip_bad = 0, []
    for e in catalog():
        s = e.system
        if not s.is_twisted_only or s.field.q ** max(1, s.n // 2) > 5000:
            continue
        R = TwistedRing(s)
        for H in s.group.all_subgroups():
            if s.field.q**H.order > 5000:
                continue
            for c in _one_dim_elements(R, H, per_subgroup):
                C = extremal_construct(H, c, "right")
                w = extremal_decompose(C)
                trips += 1
                if w.H.order != H.order or C.k != s.n // H.order:
                    trip_bad.append((e.name, H.members))
    must = {("F2[C2]", 2, 1, 2), ("F3[C6]", 6, 2, 3)}
    ok = not failures and not trip_bad and must <= required
    return CheckResult("8", "extremal codes decompose as c K^alpha G", ok, 0.0, {"decomposed": decomposed, "failures": failures, "round_trips": trips, "round_trip_failures": trip_bad, "summary": f"{decomposed} extremal codes, {trips} round trips, {len(failures) + len(trip_bad)} failures"})


# --- abelianization ---------------------------------------------------------------------------

@_timed
def check_abelianization(max_order: int = 8, confirm_up_to: int = 7) -> CheckResult:
    stalled, verified, confirmed, unconfirmed = [], 0, 0, []
    routes: dict[str, int] = {}
    for e in catalog():
        s = e.system
        if not s.is_twisted_only or s.n > max_order:
            continue
        R = TwistedRing(s)
        for side, I in _principal_codes(R):
            k = I.dim_K
            if k is None or k > 3:
                continue
            try:
                red = abelian_reduce(I)
            except ReductionStalled as exc:
                stalled.append({"system": e.name, "side": side, "dim_K": k, "basis": R.from_vec(I.basis).tolist(), "reason": str(exc)[:160]})
                continue
            key = "+".join(red.route) or "already-abelian"
            routes[key] = routes.get(key, 0) + 1
            if red.verify():
                verified += 1
            if s.n <= confirm_up_to:
                if equivalence_search(I, red.image) is not None:
                    confirmed += 1
                else:
                    unconfirmed.append(e.name)
    ok = not stalled and not unconfirmed
    return CheckResult(
        "9",
        "dim <= 3 ideals are equivalent to abelian group codes",
        ok,
        0.0,
        {"verified_chains": verified, "search_confirmed": confirmed, "unconfirmed": unconfirmed, "stalled": stalled, "stalled_count": len(stalled), "routes": routes, "summary": f"{verified} chains verified, {len(stalled)} ReductionStalled"},
    )


# --- dim-1 coboundary ---------------------------------------------------------------------------

@_timed
def check_dim1_coboundary() -> CheckResult:
    F3 = make_field(3)
    C3 = gr.cyclic(3)
    cocycles = enumerate_cocycles(C3, F3)
    found = [is_coboundary(a, F3, C3) is not None for a in cocycles]
    s = twisted_c2_f3()
    none_c2 = is_coboundary(s.alpha, s.field, s.group) is None
    R = TwistedRing(s)
    no_dim1 = all(I.dim_p != 1 for I in R.enumerate_principal_ideals("left") + R.enumerate_principal_ideals("right"))
    ok = len(cocycles) == 4 and all(found) and none_c2 and no_dim1
    return CheckResult("10", "dim-1 ideals force coboundaries", ok, 0.0, {"C3_cocycles": len(cocycles), "all_coboundaries": all(found), "twisted_C2_not_coboundary": none_c2, "twisted_C2_no_dim1_ideal": no_dim1, "summary": f"{sum(found)}/{len(cocycles)} coboundaries"})


# --- stretch -----------------------------------------------------------------------------------

@_timed
def check_stretch(budget: int = 10**6) -> CheckResult:
    rows, found_any = [], False
    complete = True
    for e in stretch_systems():
        try:
            hits, found = search_codes(TwistedRing(e.system), "left", target=(6, 3, 4), budget=budget)
        except BudgetExceeded as exc:
            complete = False
            rows.append({"system": e.name, "error": str(exc)})
            continue
        found_any |= found
        best = hits[0].params.to_json() if hits else None
        gens = [h.generator for h in hits if (h.params.n, h.params.k, h.params.d) == (6, 3, 4)]
        rows.append({"system": e.name, "codes": len(hits), "best": best, "target_found": found, "target_generators": gens})
    return CheckResult("11", "search for a [6,3,4]_9 skew code", complete, 0.0, {"rows": rows, "target_found": found_any, "summary": f"[6,3,4]_9 {'found' if found_any else 'not found'}"}, gating=False)


ALL_CHECKS = [
    check_coboundaries,
    check_hat_axioms,
    check_psi,
    check_transfer,
    check_checkable,
    check_double_annihilator,
    check_bound,
    check_extremal,
    check_abelianization,
    check_dim1_coboundary,
    check_stretch,
]


def run_all(skip_stretch: bool = False) -> list[CheckResult]:
    return [c() for c in ALL_CHECKS if not (skip_stretch and c is check_stretch)]
