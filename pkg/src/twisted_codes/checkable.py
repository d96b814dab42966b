"""Checkable right ideals and principal left ideals.

A right ideal I is checkable when I = Ann_r(v) for some v. Since v I = 0 forces
v into Ann_l(I), the witness search runs over Ann_l(I) only, testing
rank(x -> v x) = dim R - dim I in batches.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import fplinalg as la
from .crossed import CrossedSystem
from .errors import BudgetExceeded
from .ring import IdealHandle, RingElem, TwistedRing

WITNESS_BUDGET = 10**6


def _search(ring: TwistedRing, space: IdealHandle, op: str, target_rank: int, budget: int, chunk: int = 4096):
    """First nonzero v in `space` (enumeration order) whose op-multiplication matrix has target_rank."""
    k = space.dim_p
    if ring.p**k > budget:
        raise BudgetExceeded(f"{ring.p ** k} candidates exceed budget {budget}")
    elems = la.span_elements(space.basis, ring.p)[1:]
    for start in range(0, len(elems), chunk):
        vecs = elems[start : start + chunk]
        Ms = ring.batched_mul_matrices(vecs, op)
        ranks = la.batched_rank(Ms, ring.p)
        hits = np.nonzero(ranks == target_rank)[0]
        if hits.size:
            return ring.elem_from_vec(vecs[hits[0]])
    return None


def is_checkable(I: IdealHandle, budget: int = WITNESS_BUDGET) -> RingElem | None:
    """A v with Ann_r(v) = I, or None."""
    R = I.ring
    if I.dim_p == R.dim_p:
        return R.zero()
    if I.dim_p == 0:
        return R.one()
    L = R.annihilator(I, "left")
    return _search(R, L, "left", R.dim_p - I.dim_p, budget)


def left_principal_witness(L: IdealHandle, budget: int = WITNESS_BUDGET) -> RingElem | None:
    """A w in L with R w = L, or None."""
    R = L.ring
    if L.dim_p == 0:
        return R.zero()
    if L.contains(R.one()):
        return R.one()
    return _search(R, L, "right", L.dim_p, budget)


@dataclass
class IdealCheck:
    dim_p: int
    basis: list
    checkable: bool
    witness: list | None
    ann_left_principal: bool
    double_annihilator: bool

    @property
    def frobenius_consistent(self) -> bool:
        return self.checkable == self.ann_left_principal and self.double_annihilator

    def to_json(self) -> dict:
        return {
            "dim_p": self.dim_p,
            "checkable": self.checkable,
            "witness": self.witness,
            "ann_left_principal": self.ann_left_principal,
            "double_annihilator": self.double_annihilator,
        }


@dataclass
class CheckableReport:
    label: str
    p_nilpotent: bool
    sylow_cyclic: bool
    ideals: list[IdealCheck] = field(default_factory=list)

    @property
    def hypothesis_holds(self) -> bool:
        return self.p_nilpotent and self.sylow_cyclic

    @property
    def all_checkable(self) -> bool:
        return all(c.checkable for c in self.ideals)

    @property
    def frobenius_agrees(self) -> bool:
        return all(c.frobenius_consistent for c in self.ideals)

    @property
    def checkable_claim_holds(self) -> bool:
        return not self.hypothesis_holds or self.all_checkable

    def to_json(self) -> dict:
        return {
            "system": self.label,
            "hypothesis": {"p_nilpotent": self.p_nilpotent, "sylow_cyclic": self.sylow_cyclic},
            "hypothesis_holds": self.hypothesis_holds,
            "ideals": [c.to_json() for c in self.ideals],
            "all_checkable": self.all_checkable,
            "frobenius_agrees": self.frobenius_agrees,
        }


def check_ideal(I: IdealHandle, budget: int = WITNESS_BUDGET) -> IdealCheck:
    R = I.ring
    v = is_checkable(I, budget)
    if v is not None and R.annihilator(v, "right") != I:
        raise AssertionError("checkability witness failed its recheck")
    L = R.annihilator(I, "left")
    w = left_principal_witness(L, budget)
    return IdealCheck(
        dim_p=I.dim_p,
        basis=I.basis.tolist(),
        checkable=v is not None,
        witness=v.tolist() if v is not None else None,
        ann_left_principal=w is not None,
        double_annihilator=R.annihilator(L, "right") == I,
    )


def code_checkable_scan(sys_or_ring, budget: int = WITNESS_BUDGET, jobs: int = 1) -> CheckableReport:
    """Check every right ideal; ideals come from principal-ideal sum closure."""
    R = sys_or_ring if isinstance(sys_or_ring, TwistedRing) else TwistedRing(sys_or_ring)
    sys: CrossedSystem = R.sys
    p = sys.field.p
    ideals = R.enumerate_ideals("right")
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as ex:
            checks = list(ex.map(lambda I: check_ideal(I, budget), ideals))
    else:
        checks = [check_ideal(I, budget) for I in ideals]
    return CheckableReport(
        label=sys.label(),
        p_nilpotent=sys.group.is_p_nilpotent(p)[0],
        sylow_cyclic=sys.group.has_cyclic_sylow(p),
        ideals=checks,
    )
