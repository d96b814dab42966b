"""The auxiliary group K* x G with (a,g)(b,h) = (a g(b) alpha(g,h), gh), and the
algebra map psi from F_p[K* x G] onto the twisted skew group ring.

Element (a, g) has index (a - 1) * |G| + g, where a is the unit's field code;
(1, e) is therefore index 0.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .crossed import CrossedSystem
from .groups import FiniteGroup
from .ring import RingElem, TwistedRing


class HatGroup:
    def __init__(self, sys: CrossedSystem, validate: bool = True):
        self.sys = sys
        F, G = sys.field, sys.group
        n, q = G.n, F.q
        self.n_base = n
        units = np.arange(1, q)
        a = np.repeat(units, n)  # decode first component by index
        g = np.tile(np.arange(n), q - 1)
        exps = sys.sigma.array()
        first = F.vmul(F.vmul(a[:, None], F.vfrob(a[None, :], exps[g][:, None])), sys.alpha.tab[g[:, None], g[None, :]])
        second = G.table[g[:, None], g[None, :]]
        table = (first - 1) * n + second
        self.group = FiniteGroup(table, name=f"hat({sys.label()})", validate=validate)
        self._a = a
        self._g = g

    @property
    def order(self) -> int:
        return self.group.n

    def encode(self, a: int, g: int) -> int:
        return (int(a) - 1) * self.n_base + int(g)

    def decode(self, x: int) -> tuple[int, int]:
        return int(self._a[x]), int(self._g[x])

    def mul(self, x: int, y: int) -> int:
        return self.group.mul(x, y)

    def closed_form_inverse(self, x: int) -> int:
        """(y^-1 (1 / (a alpha(y, y^-1))), y^-1) for x = (a, y)."""
        F, G = self.sys.field, self.sys.group
        a, y = self.decode(x)
        yi = G.inv(y)
        val = F.inv(F.mul(a, self.sys.alpha(y, yi)))
        return self.encode(self.sys.act(yi, val), yi)

    def hat_power(self, x: int, b: int) -> int:
        """x^b in closed form: (prod_{k<b} g^k(a) alpha(g^k, g), g^b) for x = (a, g)."""
        F, G = self.sys.field, self.sys.group
        a, g = self.decode(x)
        acc, gk = 1, 0
        for _ in range(b):
            acc = F.mul(acc, F.mul(self.sys.act(gk, a), self.sys.alpha(gk, g)))
            gk = G.mul(gk, g)
        return self.encode(acc, gk)

    def hat_power_literal(self, x: int, b: int) -> int:
        """The product written with alpha(g, g^k) in place of alpha(g^k, g).

        Equal to hat_power whenever sigma is trivial; may differ otherwise.
        """
        F, G = self.sys.field, self.sys.group
        a, g = self.decode(x)
        acc, gk = 1, 0
        for _ in range(b):
            acc = F.mul(acc, F.mul(self.sys.alpha(g, gk), self.sys.act(gk, a)))
            gk = G.mul(gk, g)
        return self.encode(acc, gk)

    def iterated_power(self, x: int, b: int) -> int:
        y = 0
        for _ in range(b):
            y = self.group.mul(y, x)
        return y

    def projection(self) -> np.ndarray:
        """pi: (a, g) -> g."""
        return self._g.copy()

    def __repr__(self) -> str:
        return f"HatGroup({self.sys.label()}, order={self.order})"


def build_hat_group(sys: CrossedSystem) -> HatGroup:
    return HatGroup(sys)


def hat_power(hat: HatGroup, x: int, b: int) -> int:
    return hat.hat_power(x, b)


@dataclass
class HatAxiomsReport:
    order: int
    expected_order: int
    associativity_violations: int
    identity_ok: bool
    inverse_mismatches: int
    power_mismatches: int
    literal_power_mismatches: int
    projection_hom_violations: int

    @property
    def ok(self) -> bool:
        return (
            self.order == self.expected_order
            and self.associativity_violations == 0
            and self.identity_ok
            and self.inverse_mismatches == 0
            and self.power_mismatches == 0
            and self.projection_hom_violations == 0
        )

    def to_json(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def hat_axioms_report(sys: CrossedSystem) -> HatAxiomsReport:
    """Exhaustive group-axiom, inverse and power checks for K* x G."""
    hat = HatGroup(sys, validate=False)
    T = hat.group.table
    N = hat.order
    full = np.arange(N)
    left = T[T[:, :, None], full[None, None, :]]
    right = T[full[:, None, None], T[None, :, :]]
    assoc = int(np.count_nonzero(left != right))
    identity_ok = bool((T[0] == full).all() and (T[:, 0] == full).all())
    inv_bad = 0
    for x in range(N):
        y = hat.closed_form_inverse(x)
        if T[x, y] != 0 or T[y, x] != 0:
            inv_bad += 1
    pow_bad = lit_bad = 0
    for x in range(N):
        y = 0
        for b in range(1, N + 1):
            y = int(T[y, x])
            if hat.hat_power(x, b) != y:
                pow_bad += 1
            if hat.hat_power_literal(x, b) != y:
                lit_bad += 1
    pi = hat.projection()
    G = sys.group.table
    proj_bad = int(np.count_nonzero(pi[T] != G[pi[:, None], pi[None, :]]))
    return HatAxiomsReport(
        order=N,
        expected_order=(sys.field.q - 1) * sys.group.n,
        associativity_violations=assoc,
        identity_ok=identity_ok,
        inverse_mismatches=inv_bad,
        power_mismatches=pow_bad,
        literal_power_mismatches=lit_bad,
        projection_hom_violations=proj_bad,
    )


# --- psi -------------------------------------------------------------------

def psi_map(hat: HatGroup, combo, ring: TwistedRing | None = None) -> RingElem:
    """Linear extension of psi(c (a, g)-bar) = (c a) g-bar.

    `combo` is a dict {hat index: F_p coefficient} or a length-|hat| array.
    """
    ring = ring or TwistedRing(hat.sys)
    F = hat.sys.field
    if isinstance(combo, dict):
        items = combo.items()
    else:
        arr = np.asarray(combo, dtype=np.int64)
        items = ((i, int(c)) for i, c in enumerate(arr) if c)
    acc = np.zeros(ring.n, dtype=np.int64)
    for x, c in items:
        c = int(c) % F.p
        if not c:
            continue
        a, g = hat.decode(int(x))
        acc[g] = F.add(int(acc[g]), F.mul(c, a))
    return RingElem(ring, acc)


def psi_multiplicativity_violations(hat: HatGroup, ring: TwistedRing | None = None) -> list[tuple[int, int]]:
    """Pairs (x, y) with psi(x-bar y-bar) != psi(x-bar) psi(y-bar).

    The right-hand side is computed through the ring's F_p structure tensor.
    """
    ring = ring or TwistedRing(hat.sys)
    N = hat.order
    basis_vecs = np.stack([psi_map(hat, {x: 1}, ring).vec for x in range(N)])
    bad = []
    for x in range(N):
        L = ring.mul_matrix_vec(basis_vecs[x], "left")
        prods = (basis_vecs @ L.T) % ring.p  # row y: psi(x) psi(y)
        direct = basis_vecs[hat.group.table[x]]
        for y in np.nonzero((prods != direct).any(axis=1))[0]:
            bad.append((x, int(y)))
    return bad


def psi_is_surjective(hat: HatGroup, ring: TwistedRing | None = None) -> bool:
    from .fplinalg import rank

    ring = ring or TwistedRing(hat.sys)
    vecs = np.stack([psi_map(hat, {x: 1}, ring).vec for x in range(hat.order)])
    return rank(vecs, ring.p) == ring.dim_p


@dataclass
class TransferReport:
    order: int
    p_nilpotent_G: bool
    p_nilpotent_hat: bool
    sylow_cyclic_G: bool
    sylow_cyclic_hat: bool

    @property
    def p_nilpotency_agrees(self) -> bool:
        return self.p_nilpotent_G == self.p_nilpotent_hat

    @property
    def sylow_cyclicity_agrees(self) -> bool:
        return self.sylow_cyclic_G == self.sylow_cyclic_hat

    def to_json(self) -> dict:
        d = asdict(self)
        d["p_nilpotency_agrees"] = self.p_nilpotency_agrees
        d["sylow_cyclicity_agrees"] = self.sylow_cyclicity_agrees
        return d


def hat_transfer_report(sys: CrossedSystem, p: int | None = None, hat: HatGroup | None = None) -> TransferReport:
    """Evaluate p-nilpotency and Sylow cyclicity on G and on K* x G independently."""
    p = sys.field.p if p is None else p
    if p != sys.field.p:
        raise ValueError("p must be the characteristic of the coefficient field")
    hat = hat or HatGroup(sys)
    G, H = sys.group, hat.group
    return TransferReport(
        order=H.n,
        p_nilpotent_G=G.is_p_nilpotent(p)[0],
        p_nilpotent_hat=H.is_p_nilpotent(p)[0],
        sylow_cyclic_G=G.has_cyclic_sylow(p),
        sylow_cyclic_hat=H.has_cyclic_sylow(p),
    )
