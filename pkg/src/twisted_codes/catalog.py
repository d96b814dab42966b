"""Desk-scale catalog of crossed systems used by the CLI suite and the tests."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import groups as gr
from .crossed import Cocycle, CrossedSystem, SigmaAction, coboundary_from_lambda, enumerate_cocycles, is_coboundary
from .gf import FiniteField


@dataclass
class CatalogEntry:
    name: str
    system: CrossedSystem
    tags: tuple[str, ...] = ()

    @property
    def p_nilpotent(self) -> bool:
        return self.system.group.is_p_nilpotent(self.system.field.p)[0]

    @property
    def sylow_cyclic(self) -> bool:
        return self.system.group.has_cyclic_sylow(self.system.field.p)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "system": self.system.to_json(),
            "tags": list(self.tags),
            "p_nilpotent": self.p_nilpotent,
            "sylow_cyclic": self.sylow_cyclic,
        }


def field(q: int) -> FiniteField:
    for p in (2, 3, 5, 7):
        m = 1
        while p**m < q:
            m += 1
        if p**m == q:
            return FiniteField(p, m)
    raise ValueError(f"{q} is not a prime power in range")


def twisted_c2_f3() -> CrossedSystem:
    """F_3^alpha[C2] with alpha(g, g) = 2, isomorphic to F_9."""
    tab = np.ones((2, 2), dtype=np.int64)
    tab[1, 1] = 2
    return CrossedSystem(field(3), gr.cyclic(2), alpha=Cocycle(tab))


def frobenius_c2_f4() -> CrossedSystem:
    return CrossedSystem(field(4), gr.cyclic(2), sigma=SigmaAction((0, 1)))


def cohomology_representatives(group: gr.FiniteGroup, K: FiniteField) -> list[Cocycle]:
    """One normalized cocycle per class in H^2(G, K*) (sigma trivial); the trivial class first."""
    reps: list[Cocycle] = []
    for a in enumerate_cocycles(group, K):
        for r in reps:
            ratio = K.vmul(a.tab, K.vinv(r.tab))
            if is_coboundary(Cocycle(ratio), K, group) is not None:
                break
        else:
            reps.append(a)
    return reps


def _untwisted(q: int, names) -> list[CatalogEntry]:
    out = []
    for g in names:
        G = gr.builtin(g)
        out.append(CatalogEntry(f"F{q}[{g}]", CrossedSystem(field(q), G), ("untwisted",)))
    return out


@lru_cache(maxsize=None)
def catalog() -> tuple[CatalogEntry, ...]:
    """Every system with |G| <= 8 used by the suite."""
    entries = []
    entries += _untwisted(2, ["C2", "C3", "C4", "C6", "S3", "V4", "D4", "Q8"])
    entries += _untwisted(3, ["C2", "C3", "C4", "C6", "S3", "V4"])
    entries += _untwisted(4, ["C2", "C3", "S3", "V4"])
    entries.append(CatalogEntry("F3^a[C2]", twisted_c2_f3(), ("twisted",)))
    # coboundary twists: isomorphic to the untwisted ring but with nontrivial alpha
    F3, F4 = field(3), field(4)
    C3, S3 = gr.cyclic(3), gr.symmetric(3)
    entries.append(
        CatalogEntry("F3^dmu[C3]", CrossedSystem(F3, C3, alpha=coboundary_from_lambda([1, 2, 2], F3, C3)), ("twisted", "coboundary"))
    )
    entries.append(
        CatalogEntry(
            "F4^dmu[S3]",
            CrossedSystem(F4, S3, alpha=coboundary_from_lambda([1, 2, 3, 1, 2, 3], F4, S3)),
            ("twisted", "coboundary"),
        )
    )
    # every nontrivial cohomology class over F_3 for these groups
    for g in ["C4", "V4", "S3", "C6", "D4", "Q8"]:
        G = gr.builtin(g)
        for i, a in enumerate(cohomology_representatives(G, F3)[1:]):
            entries.append(CatalogEntry(f"F3^a{i + 1}[{g}]", CrossedSystem(F3, G, alpha=a), ("twisted",)))
    # skew systems
    entries.append(CatalogEntry("F4[C2;frob]", frobenius_c2_f4(), ("skew",)))
    C4 = gr.cyclic(4)
    entries.append(CatalogEntry("F4[C4;frob]", CrossedSystem(F4, C4, sigma=SigmaAction((0, 1, 0, 1))), ("skew",)))
    sign = SigmaAction(tuple(0 if g in (0, 3, 4) else 1 for g in range(6)))
    entries.append(CatalogEntry("F4[S3;sign]", CrossedSystem(F4, S3, sigma=sign), ("skew",)))
    skew_twisted = [a for a in enumerate_cocycles(C4, F4, SigmaAction((0, 1, 0, 1)), limit=4) if not a.is_trivial]
    entries.append(
        CatalogEntry("F4^a[C4;frob]", CrossedSystem(F4, C4, sigma=SigmaAction((0, 1, 0, 1)), alpha=skew_twisted[0]), ("skew", "twisted"))
    )
    return tuple(entries)


def by_name(name: str) -> CatalogEntry:
    for e in catalog():
        if e.name == name:
            return e
    raise KeyError(name)


def stretch_systems() -> list[CatalogEntry]:
    """F_9 systems on groups of order 6 with sigma of order 2 (Frobenius on an index-2 subgroup's complement)."""
    F9 = field(9)
    out = []
    C6 = gr.cyclic(6)
    out.append(CatalogEntry("F9[C6;frob]", CrossedSystem(F9, C6, sigma=SigmaAction(tuple(g % 2 for g in range(6)))), ("skew", "stretch")))
    S3 = gr.symmetric(3)
    sign = SigmaAction(tuple(0 if g in (0, 3, 4) else 1 for g in range(6)))
    out.append(CatalogEntry("F9[S3;sign]", CrossedSystem(F9, S3, sigma=sign), ("skew", "stretch")))
    return out
