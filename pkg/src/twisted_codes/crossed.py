"""Crossed systems (G, F_{p^m}, sigma, alpha).

sigma is stored as Frobenius exponents: element g acts as a -> a^(p^exps[g]).
alpha is an |G| x |G| table of unit field codes.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import BudgetExceeded, InvalidCrossedSystem, ZeroLambdaEntry
from .gf import FiniteField
from .groups import FiniteGroup, group_build

COBOUNDARY_BUDGET = 10**7
ENUMERATION_BUDGET = 10**6


@dataclass(frozen=True)
class SigmaAction:
    exps: tuple[int, ...]

    @classmethod
    def trivial(cls, n: int) -> "SigmaAction":
        return cls((0,) * n)

    @property
    def is_trivial(self) -> bool:
        return not any(self.exps)

    def array(self) -> np.ndarray:
        return np.array(self.exps, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class Cocycle:
    tab: np.ndarray

    def __post_init__(self):
        t = np.array(self.tab, dtype=np.int64)
        t.flags.writeable = False
        object.__setattr__(self, "tab", t)

    @classmethod
    def trivial(cls, n: int) -> "Cocycle":
        return cls(np.ones((n, n), dtype=np.int64))

    def __call__(self, x: int, y: int) -> int:
        return int(self.tab[x, y])

    def __eq__(self, other) -> bool:
        return isinstance(other, Cocycle) and np.array_equal(self.tab, other.tab)

    def __hash__(self) -> int:
        return hash(self.tab.tobytes())

    @property
    def is_trivial(self) -> bool:
        return bool((self.tab == 1).all())


@dataclass
class ValidationReport:
    violations: list = dc_field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"valid": self.valid, "violations": [list(v) for v in self.violations]}


class CrossedSystem:
    """The quartet (G, K, sigma, alpha) with K = F_{p^m}."""

    def __init__(self, field: FiniteField, group: FiniteGroup, sigma=None, alpha=None, check: bool = True):
        n = group.n
        if sigma is None:
            sigma = SigmaAction.trivial(n)
        elif not isinstance(sigma, SigmaAction):
            sigma = SigmaAction(tuple(int(e) % field.m for e in sigma))
        if alpha is None:
            alpha = Cocycle.trivial(n)
        elif not isinstance(alpha, Cocycle):
            alpha = Cocycle(alpha)
        if len(sigma.exps) != n or alpha.tab.shape != (n, n):
            raise ValueError("sigma/alpha dimensions do not match the group")
        self.field = field
        self.group = group
        self.sigma = sigma
        self.alpha = alpha
        if check:
            report = validate_crossed_system(self)
            if not report.valid:
                raise InvalidCrossedSystem(report)

    @property
    def n(self) -> int:
        return self.group.n

    @property
    def is_twisted_only(self) -> bool:
        return self.sigma.is_trivial

    @property
    def is_untwisted(self) -> bool:
        return self.sigma.is_trivial and self.alpha.is_trivial

    def act(self, g: int, a: int) -> int:
        """sigma(g)(a)."""
        return self.field.frob(a, self.sigma.exps[g])

    def with_alpha(self, alpha, check: bool = True) -> "CrossedSystem":
        return CrossedSystem(self.field, self.group, self.sigma, alpha, check=check)

    def label(self) -> str:
        f = f"F{self.field.q}"
        parts = [f, self.group.name]
        if not self.sigma.is_trivial:
            parts.append("sigma=" + "".join(str(e) for e in self.sigma.exps))
        if not self.alpha.is_trivial:
            parts.append("twisted")
        return "-".join(parts)

    # --- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        gspec = {"builtin": self.group.name} if _is_builtin_name(self.group) else {"table": self.group.table.tolist()}
        return {
            "field": self.field.spec(),
            "group": gspec,
            "sigma": list(self.sigma.exps),
            "alpha": self.alpha.tab.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict, check: bool = True) -> "CrossedSystem":
        field = FiniteField.from_spec(data["field"])
        group = group_build(data["group"])
        n = group.n
        sigma = data.get("sigma")
        alpha = data.get("alpha")
        if alpha is not None:
            alpha = np.array(alpha, dtype=np.int64)
            if alpha.shape == (n - 1, n - 1):
                full = np.ones((n, n), dtype=np.int64)
                full[1:, 1:] = alpha
                alpha = full
        return cls(field, group, sigma, alpha, check=check)

    @classmethod
    def load(cls, path, check: bool = True) -> "CrossedSystem":
        with open(path) as fh:
            return cls.from_json(json.load(fh), check=check)

    def __repr__(self) -> str:
        return f"CrossedSystem({self.label()})"


def _is_builtin_name(group: FiniteGroup) -> bool:
    try:
        return np.array_equal(group_build(group.name).table, group.table)
    except ValueError:
        return False


# --- validation ------------------------------------------------------------

def validate_crossed_system(sys: CrossedSystem) -> ValidationReport:
    """Check the three crossed-system identities exhaustively."""
    F, G = sys.field, sys.group
    n, m = G.n, F.m
    T = G.table
    e = sys.sigma.array()
    a = sys.alpha.tab
    report = ValidationReport()

    if (a == 0).any():
        for x, y in np.argwhere(a == 0):
            report.violations.append(("unit", int(x), int(y)))
    if e[0] % m != 0:
        report.violations.append(("identity_action", 0))

    # condition 1: sigma is a homomorphism into Z/m
    bad1 = (e[:, None] + e[None, :] - e[T]) % m != 0
    for x, y in np.argwhere(bad1):
        report.violations.append((1, int(x), int(y)))

    # condition 3: normalization
    for x in range(n):
        if a[x, 0] != 1 or a[0, x] != 1:
            report.violations.append((3, x))

    # condition 2: a(x,y) a(xy,z) = x(a(y,z)) a(x,yz)
    if not (a == 0).any():
        x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
        lhs = F.vmul(a[x, y], a[T[x, y], z])
        rhs = F.vmul(F.vfrob(a[y, z], e[x]), a[x, T[y, z]])
        for t in np.argwhere(lhs != rhs):
            report.violations.append((2, int(t[0]), int(t[1]), int(t[2])))
    return report


def condition1_literal(sys: CrossedSystem) -> np.ndarray:
    """Pairs (x, y) where x(y(b)) = alpha(x,y) xy(b) alpha(x,y)^-1 fails for some b.

    Evaluated over every field element; in a commutative field the conjugation
    by alpha is trivial, so this must agree with the homomorphism check.
    """
    F, G = sys.field, sys.group
    e = sys.sigma.array()
    a = sys.alpha.tab
    b = np.arange(F.q)
    bad = np.zeros((G.n, G.n), dtype=bool)
    for x in range(G.n):
        for y in range(G.n):
            lhs = F.vfrob(F.vfrob(b, e[y]), e[x])
            al = a[x, y]
            if al == 0:
                bad[x, y] = True
                continue
            rhs = F.vmul(F.vmul(al, F.vfrob(b, e[G.table[x, y]])), F.inv(int(al)))
            bad[x, y] = not np.array_equal(lhs, rhs)
    return np.argwhere(bad)


# --- coboundaries ------------------------------------------------------------

def coboundary_from_lambda(lam, field: FiniteField, group: FiniteGroup, sigma: SigmaAction | None = None) -> Cocycle:
    """delta(lam)(g, h) = lam(g) * g(lam(h)) * lam(gh)^-1."""
    lam = np.asarray(lam, dtype=np.int64)
    if lam.shape != (group.n,):
        raise ValueError("lambda must have one entry per group element")
    if (lam == 0).any():
        raise ZeroLambdaEntry(f"lambda vanishes at {np.nonzero(lam == 0)[0].tolist()}")
    if lam[0] != 1:
        raise ValueError("lambda must be normalized with lambda(e) = 1")
    e = np.zeros(group.n, dtype=np.int64) if sigma is None else sigma.array()
    T = group.table
    act = field.vfrob(lam[None, :], e[:, None])
    tab = field.vmul(field.vmul(lam[:, None], act), field.vinv(lam[T]))
    return Cocycle(tab)


def is_coboundary(alpha: Cocycle, field: FiniteField, group: FiniteGroup, budget: int = COBOUNDARY_BUDGET):
    """Search lam: G -> K* with lam(e) = 1 and delta(lam) = alpha (sigma trivial).

    Returns the first such lam in lexicographic order, or None.
    """
    n = group.n
    size = (field.q - 1) ** (n - 1)
    if size > budget:
        raise BudgetExceeded(f"(q-1)^(|G|-1) = {size} exceeds budget {budget}")
    T = group.table
    a = alpha.tab
    # checks[k] = pairs (g, h) whose identity involves only lam[0..k] and index k
    checks = [[] for _ in range(n)]
    for g in range(n):
        for h in range(n):
            k = max(g, h, int(T[g, h]))
            checks[k].append((g, h, int(T[g, h])))
    lam = [1] + [0] * (n - 1)
    mul = field.mul

    def ok(k: int) -> bool:
        for g, h, gh in checks[k]:
            if mul(int(a[g, h]), lam[gh]) != mul(lam[g], lam[h]):
                return False
        return True

    if not ok(0):
        return None

    def search(k: int) -> bool:
        if k == n:
            return True
        for u in range(1, field.q):
            lam[k] = u
            if ok(k) and search(k + 1):
                return True
        lam[k] = 0
        return False

    if search(1):
        return np.array(lam, dtype=np.int64)
    return None


# --- enumeration -------------------------------------------------------------

def enumerate_cocycles(
    group: FiniteGroup,
    field: FiniteField,
    sigma: SigmaAction | None = None,
    budget: int = ENUMERATION_BUDGET,
    limit: int | None = None,
) -> list[Cocycle]:
    """Every normalized 2-cocycle for the given action, by backtracking.

    Free entries alpha(x, y) with x, y != e are filled row-major; each cocycle
    identity is checked as soon as all four of its entries are assigned.
    ``budget`` bounds completed tables (BudgetExceeded past it); ``limit`` stops
    quietly after that many results.
    """
    n = group.n
    T = group.table
    e = np.zeros(n, dtype=np.int64) if sigma is None else sigma.array()
    free = [(x, y) for x in range(1, n) for y in range(1, n)]
    pos = {xy: i for i, xy in enumerate(free)}
    attached = [[] for _ in range(len(free))]
    for x in range(1, n):
        for y in range(1, n):
            for z in range(1, n):
                ents = [(x, y), (int(T[x, y]), z), (y, z), (x, int(T[y, z]))]
                ps = [pos[t] for t in ents if t in pos]
                attached[max(ps)].append((x, y, z))
    tab = np.ones((n, n), dtype=np.int64)
    results: list[Cocycle] = []
    mul, frob = field.mul, field.frob
    counter = {"done": 0}

    def consistent(i: int) -> bool:
        for x, y, z in attached[i]:
            lhs = mul(int(tab[x, y]), int(tab[T[x, y], z]))
            rhs = mul(frob(int(tab[y, z]), int(e[x])), int(tab[x, T[y, z]]))
            if lhs != rhs:
                return False
        return True

    class _Stop(Exception):
        pass

    def search(i: int) -> None:
        if i == len(free):
            counter["done"] += 1
            if counter["done"] > budget:
                raise BudgetExceeded(f"more than {budget} cocycles")
            results.append(Cocycle(tab.copy()))
            if limit is not None and len(results) >= limit:
                raise _Stop
            return
        x, y = free[i]
        for u in range(1, field.q):
            tab[x, y] = u
            if consistent(i):
                search(i + 1)
        tab[x, y] = 1

    try:
        search(0)
    except _Stop:
        pass
    return results


def sigma_homomorphisms(group: FiniteGroup, m: int) -> list[SigmaAction]:
    """All homomorphisms G -> Z/m, as Frobenius exponent vectors."""
    if m == 1:
        return [SigmaAction.trivial(group.n)]
    T = group.table
    out = []
    # a homomorphism is determined by its values on a generating set; brute force is fine at desk scale
    gens = _generators(group)
    for vals in itertools.product(range(m), repeat=len(gens)):
        exps = {0: 0}
        for g, v in zip(gens, vals):
            exps[g] = v
        frontier = list(exps)
        ok = True
        while frontier and ok:
            new = []
            for x in frontier:
                for g in gens:
                    y = int(T[x, g])
                    val = (exps[x] + exps[g]) % m
                    if y in exps:
                        if exps[y] != val:
                            ok = False
                            break
                    else:
                        exps[y] = val
                        new.append(y)
                if not ok:
                    break
            frontier = new
        if not ok:
            continue
        arr = tuple(exps[g] for g in range(group.n))
        if all((arr[x] + arr[y]) % m == arr[int(T[x, y])] for x in range(group.n) for y in range(group.n)):
            out.append(SigmaAction(arr))
    return out


def _generators(group: FiniteGroup) -> list[int]:
    gens: list[int] = []
    current = group.trivial()
    for g in range(group.n):
        if g not in current:
            gens.append(g)
            current = group.generate(gens)
            if current.order == group.n:
                break
    return gens
