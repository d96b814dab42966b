"""Finite groups as Cayley tables, with the structural queries needed downstream.

Elements are indices 0..n-1 with the identity fixed at 0. ``table[i, j]`` is the
index of g_i * g_j.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NotAGroup, NotNormal

ASSOC_EXHAUSTIVE_LIMIT = 64
MAX_ORDER = 128


@dataclass(frozen=True)
class Subgroup:
    parent: "FiniteGroup"
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g) -> bool:
        return g in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, members={list(self.members)})"


class FiniteGroup:
    def __init__(self, table, name: str | None = None, validate: bool = True):
        table = np.asarray(table, dtype=np.int64)
        n = table.shape[0]
        if table.shape != (n, n) or n == 0:
            raise NotAGroup("table must be square and nonempty")
        if n > MAX_ORDER:
            raise NotAGroup(f"order {n} exceeds supported maximum {MAX_ORDER}")
        if validate:
            table = _validated(table)
        self.table = table
        self.table.flags.writeable = False
        self.n = n
        self.name = name or f"G{n}"
        inv = np.argmax(table == 0, axis=1)
        self.inverse = inv.astype(np.int64)
        self.identity = 0

    # --- basics ------------------------------------------------------------

    @property
    def order(self) -> int:
        return self.n

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        x = 0
        for _ in range(k):
            x = int(self.table[x, g])
        return x

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.n, dtype=np.int64)
        for g in range(self.n):
            x, k = g, 1
            while x != 0:
                x = int(self.table[x, g])
                k += 1
            orders[g] = k
        return orders

    def element_order(self, g: int) -> int:
        return int(self.element_orders[g])

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def elements(self) -> range:
        return range(self.n)

    def full(self) -> Subgroup:
        return Subgroup(self, tuple(range(self.n)))

    def trivial(self) -> Subgroup:
        return Subgroup(self, (0,))

    # --- subgroups ---------------------------------------------------------

    def generate(self, gens) -> Subgroup:
        members = {0}
        frontier = [int(g) for g in gens]
        members.update(frontier)
        gens = list(set(frontier))
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = int(self.table[x, g])
                    if y not in members:
                        members.add(y)
                        new.append(y)
            frontier = new
        return Subgroup(self, tuple(sorted(members)))

    def subgroup(self, members) -> Subgroup:
        members = tuple(sorted(set(int(x) for x in members)))
        if not self.is_subgroup(members):
            raise ValueError(f"{list(members)} is not a subgroup")
        return Subgroup(self, members)

    def is_subgroup(self, members) -> bool:
        s = set(int(x) for x in members)
        if 0 not in s:
            return False
        idx = np.array(sorted(s))
        prods = self.table[np.ix_(idx, idx)]
        return bool(np.isin(prods, idx).all()) and bool(np.isin(self.inverse[idx], idx).all())

    def is_normal(self, members) -> bool:
        s = set(int(x) for x in members)
        if not self.is_subgroup(s):
            return False
        for g in range(self.n):
            gi = self.inverse[g]
            for h in s:
                if int(self.table[self.table[g, h], gi]) not in s:
                    return False
        return True

    def is_cyclic(self, members=None) -> bool:
        """True iff some member generates the set (the set must be a subgroup)."""
        if members is None:
            members = range(self.n)
        members = list(members)
        k = len(members)
        return any(self.element_order(g) == k for g in members) and self.is_subgroup(members)

    def cyclic_subgroups(self) -> list[Subgroup]:
        seen = {}
        for g in range(self.n):
            s = self.generate([g])
            seen[s.members] = s
        return list(seen.values())

    def all_subgroups(self) -> list[Subgroup]:
        """Every subgroup, by closing cyclic subgroups under joins."""
        subs = {s.members: s for s in self.cyclic_subgroups()}
        cyc = list(subs.values())
        frontier = list(subs.values())
        while frontier:
            new = []
            for a in frontier:
                for c in cyc:
                    if set(c.members) <= set(a.members):
                        continue
                    j = self.generate(a.members + c.members)
                    if j.members not in subs:
                        subs[j.members] = j
                        new.append(j)
            frontier = new
        return sorted(subs.values(), key=lambda s: (s.order, s.members))

    def normal_subgroups(self) -> list[Subgroup]:
        return [s for s in self.all_subgroups() if self.is_normal(s.members)]

    def conjugate(self, g: int, h: int) -> int:
        """g h g^-1."""
        return int(self.table[self.table[g, h], self.inverse[g]])

    def commutator(self, g: int, h: int) -> int:
        """g h g^-1 h^-1."""
        return int(self.table[self.conjugate(g, h), self.inverse[h]])

    def commutator_subgroup(self) -> Subgroup:
        comms = {self.commutator(g, h) for g in range(self.n) for h in range(self.n)}
        return self.generate(comms)

    def quotient(self, N) -> tuple["FiniteGroup", np.ndarray, list[int]]:
        """G/N with projection array and coset representatives (first is identity).

        Representatives are the smallest index in each coset, sorted.
        """
        members = N.members if isinstance(N, Subgroup) else tuple(sorted(N))
        if not self.is_normal(members):
            raise NotNormal(f"{list(members)} is not normal")
        idx = np.array(members)
        coset_of = np.full(self.n, -1, dtype=np.int64)
        reps = []
        for g in range(self.n):
            if coset_of[g] >= 0:
                continue
            coset_of[self.table[g, idx]] = len(reps)
            reps.append(g)
        s = len(reps)
        qt = np.zeros((s, s), dtype=np.int64)
        for i, a in enumerate(reps):
            for j, b in enumerate(reps):
                qt[i, j] = coset_of[self.table[a, b]]
        Q = FiniteGroup(qt, name=f"{self.name}/N{len(members)}", validate=False)
        return Q, coset_of, reps

    def sylow_subgroup(self, p: int) -> Subgroup:
        """A Sylow p-subgroup, by closure over p-elements with backtracking."""
        target = p_part(self.n, p)
        if target == 1:
            return self.trivial()
        p_elems = [g for g in range(self.n) if is_power_of(self.element_order(g), p) and g != 0]
        seen = set()

        def search(current: Subgroup):
            if current.order == target:
                return current
            cur = set(current.members)
            for x in p_elems:
                if x in cur:
                    continue
                cand = self.generate(current.members + (x,))
                if cand.members in seen or not is_power_of(cand.order, p):
                    continue
                seen.add(cand.members)
                found = search(cand)
                if found is not None:
                    return found
            return None

        result = search(self.trivial())
        if result is None:  # Sylow's theorem makes this unreachable
            raise AssertionError("no Sylow subgroup found")
        return result

    def has_cyclic_sylow(self, p: int) -> bool:
        syl = self.sylow_subgroup(p)
        return self.is_cyclic(syl.members)

    def is_p_nilpotent(self, p: int):
        """Decide p-nilpotency by whether the p'-elements form a subgroup.

        Returns (True, complement) or (False, (a, b)) where a, b are p'-elements
        whose product is not.
        """
        pprime = [g for g in range(self.n) if self.element_order(g) % p != 0]
        s = set(pprime)
        for a in pprime:
            for b in pprime:
                if int(self.table[a, b]) not in s:
                    return False, (a, b)
        return True, Subgroup(self, tuple(pprime))

    # --- misc --------------------------------------------------------------

    def spec(self) -> dict:
        return {"table": self.table.tolist(), "name": self.name}

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.n})"


def _validated(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    full = np.arange(n)
    if table.min() < 0 or table.max() >= n:
        raise NotAGroup("entries out of range")
    if not (np.sort(table, axis=1) == full).all() or not (np.sort(table, axis=0) == full[:, None]).all():
        raise NotAGroup("table is not a Latin square")
    ids = [e for e in range(n) if (table[e] == full).all() and (table[:, e] == full).all()]
    if not ids:
        raise NotAGroup("no identity element")
    e = ids[0]
    if e != 0:
        perm = np.arange(n)
        perm[0], perm[e] = e, 0  # new index -> old index
        old_to_new = np.argsort(perm)
        table = old_to_new[table[np.ix_(perm, perm)]]
    if n <= ASSOC_EXHAUSTIVE_LIMIT:
        left = table[table[:, :, None], full[None, None, :]]  # (ab)c
        right = table[full[:, None, None], table[None, :, :]]  # a(bc)
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            raise NotAGroup(f"associativity fails at {tuple(int(x) for x in bad)}")
    else:
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, 20000))
        if not np.array_equal(table[table[a, b], c], table[a, table[b, c]]):
            raise NotAGroup("associativity fails on a sampled triple")
    return table


def p_part(n: int, p: int) -> int:
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def is_power_of(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


# --- builders ----------------------------------------------------------------

def from_elements(elements, op, name: str | None = None) -> FiniteGroup:
    """Cayley table of a closed list of hashable elements under `op`; identity must come first."""
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[op(a, b)]
    return FiniteGroup(table, name=name)


def cyclic(k: int) -> FiniteGroup:
    i = np.arange(k)
    return FiniteGroup((i[:, None] + i[None, :]) % k, name=f"C{k}")


def dihedral(k: int) -> FiniteGroup:
    """Dihedral group of order 2k; element r^i s^j has index i + k*j."""
    elems = [(i, j) for j in range(2) for i in range(k)]

    def op(a, b):
        i, j = a
        c, d = b
        return ((i + (c if j == 0 else -c)) % k, (j + d) % 2)

    return from_elements(elems, op, name=f"D{k}")


def _compose(s, t):
    return tuple(s[t[x]] for x in range(len(s)))


def symmetric(n: int) -> FiniteGroup:
    perms = list(itertools.permutations(range(n)))
    return from_elements(perms, _compose, name=f"S{n}")


def _parity(perm) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return inv % 2


def alternating(n: int) -> FiniteGroup:
    perms = [s for s in itertools.permutations(range(n)) if _parity(s) == 0]
    return from_elements(perms, _compose, name=f"A{n}")


def quaternion() -> FiniteGroup:
    """Q8 ordered as 1, -1, i, -i, j, -j, k, -k."""
    basis = {"1": (1, 0, 0, 0), "i": (0, 1, 0, 0), "j": (0, 0, 1, 0), "k": (0, 0, 0, 1)}
    elems = []
    for u in ("1", "i", "j", "k"):
        v = basis[u]
        elems.append(v)
        elems.append(tuple(-x for x in v))

    def op(a, b):
        a1, b1, c1, d1 = a
        a2, b2, c2, d2 = b
        return (
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    return from_elements(elems, op, name="Q8")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with (g, h) at index g*|H| + h."""
    m = H.n
    gi = np.arange(G.n)
    hi = np.arange(m)
    tg = G.table[gi[:, None, None, None], gi[None, None, :, None]]
    th = H.table[hi[None, :, None, None], hi[None, None, None, :]]
    table = (tg * m + th).reshape(G.n * m, G.n * m)
    return FiniteGroup(table, name=f"{G.name}x{H.name}", validate=False)


def klein4() -> FiniteGroup:
    g = direct_product(cyclic(2), cyclic(2))
    g.name = "V4"
    return g


_SIMPLE = {
    "S3": lambda: symmetric(3),
    "S4": lambda: symmetric(4),
    "A4": lambda: alternating(4),
    "Q8": quaternion,
    "V4": klein4,
    "KLEIN4": klein4,
}


def builtin(name: str) -> FiniteGroup:
    """Parse a builtin name: C6, D4, S3, A4, Q8, V4/klein4, cyclic(6), dihedral(3), symmetric(3),
    alternating(4), quaternion(8), and products such as C2xC2."""
    key = name.strip()
    if "x" in key and not key.lower().startswith("klein"):
        parts = key.split("x")
        g = builtin(parts[0])
        for part in parts[1:]:
            g = direct_product(g, builtin(part))
        return g
    up = key.upper()
    if up in _SIMPLE:
        return _SIMPLE[up]()
    m = re.fullmatch(r"([A-Za-z]+)\(?(\d+)\)?", key)
    if not m:
        raise ValueError(f"unknown builtin group {name!r}")
    kind, k = m.group(1).lower(), int(m.group(2))
    if kind in ("c", "cyclic"):
        return cyclic(k)
    if kind in ("d", "dihedral"):
        return dihedral(k)
    if kind in ("s", "symmetric"):
        return symmetric(k)
    if kind in ("a", "alternating"):
        return alternating(k)
    if kind in ("q", "quaternion") and k == 8:
        return quaternion()
    raise ValueError(f"unknown builtin group {name!r}")


def group_build(source) -> FiniteGroup:
    """Build from a builtin name, a table, a (G, H) pair (direct product), or a spec dict."""
    if isinstance(source, FiniteGroup):
        return source
    if isinstance(source, str):
        return builtin(source)
    if isinstance(source, dict):
        if "builtin" in source:
            return builtin(source["builtin"])
        if "product" in source:
            a, b = source["product"]
            return direct_product(group_build(a), group_build(b))
        return FiniteGroup(source["table"], name=source.get("name"))
    if isinstance(source, tuple) and len(source) == 2 and all(isinstance(s, FiniteGroup) for s in source):
        return direct_product(*source)
    return FiniteGroup(source)


def subgroup_ops(G: FiniteGroup, query: str, arg):
    """generate / is_subgroup / is_normal / is_cyclic."""
    if query == "generate":
        return G.generate(arg)
    if query == "is_subgroup":
        return G.is_subgroup(arg)
    if query == "is_normal":
        return G.is_normal(arg)
    if query == "is_cyclic":
        return G.is_cyclic(arg)
    raise ValueError(f"unknown query {query!r}")


def quotient_with_projection(G: FiniteGroup, N) -> tuple[FiniteGroup, np.ndarray, list[int]]:
    return G.quotient(N)


def abelian_groups(n: int) -> list[FiniteGroup]:
    """One representative per isomorphism class of abelian groups of order n."""
    factors = {}
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            factors[d] = factors.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    per_prime = []
    for p, e in sorted(factors.items()):
        per_prime.append([[p**k for k in part] for part in _partitions(e)])
    out = []
    for choice in itertools.product(*per_prime) if per_prime else [()]:
        orders = sorted(k for part in choice for k in part)
        if not orders:
            out.append(cyclic(1))
            continue
        g = cyclic(orders[0])
        for k in orders[1:]:
            g = direct_product(g, cyclic(k))
        g.name = "x".join(f"C{k}" for k in orders)
        out.append(g)
    return out


def _partitions(e: int, largest: int | None = None):
    if largest is None:
        largest = e
    if e == 0:
        yield []
        return
    for k in range(min(e, largest), 0, -1):
        for rest in _partitions(e - k, k):
            yield [k] + rest


def lcm_order(G: FiniteGroup) -> int:
    return math.lcm(*[int(x) for x in G.element_orders])
