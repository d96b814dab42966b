"""Arithmetic in F_{p^m} with an explicit Frobenius automorphism.

Elements are plain integers: the base-p encoding of the coefficient vector of
the polynomial representative, lowest degree first. ``FieldElem`` wraps a code
together with its field for operator-style use; the hot loops elsewhere work
on the integer codes and the numpy tables exposed here.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DivisionByZero, FieldMismatch, NonPrimeCharacteristic, ReducibleModulus

TABLE_LIMIT = 4096
DENSE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# --- polynomials over F_p as coefficient lists, lowest degree first ---------

def _trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        f = (a[-1] * inv_lead) % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % p
        a = _trim(a)
    return a


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not poly_mod(poly, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree m, as [c0..cm]."""
    if m == 1:
        return [0, 1]
    for low in itertools.product(range(p), repeat=m):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable for prime p


class FiniteField:
    """The field F_{p^m} = F_p[x]/(modulus)."""

    def __init__(self, p: int, m: int = 1, modulus: list[int] | None = None):
        if not is_prime(p):
            raise NonPrimeCharacteristic(f"{p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = smallest_irreducible(p, m)
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {m}")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"{modulus} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = tuple(modulus)
        self._build_tables()

    # --- construction ------------------------------------------------------

    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        self._pw = [p**i for i in range(m)]
        codes = np.arange(q, dtype=np.int64)
        self.digit_table = np.stack([(codes // p**i) % p for i in range(m)], axis=1)
        self.neg_table = self._from_digits_arr((-self.digit_table) % p)
        self.exp_table = None
        self.log_table = None
        self.primitive = None
        if q <= TABLE_LIMIT:
            self.primitive = self._find_primitive()
            exp = np.zeros(q - 1, dtype=np.int64)
            log = np.full(q, -1, dtype=np.int64)
            x = 1
            for k in range(q - 1):
                exp[k] = x
                log[x] = k
                x = self._poly_mul_codes(x, self.primitive)
            self.exp_table, self.log_table = exp, log
            inv = np.zeros(q, dtype=np.int64)
            inv[1:] = exp[(-log[1:]) % (q - 1)]
            self.inv_table = inv
            # frob_tables[k][a] = a^(p^k)
            self.frob_tables = np.zeros((m, q), dtype=np.int64)
            for k in range(m):
                e = p**k
                self.frob_tables[k, 0] = 0
                self.frob_tables[k, 1:] = exp[(log[1:] * e) % (q - 1)]
        self.add_table = None
        self.mul_table = None
        if q <= DENSE_LIMIT:
            a = codes[:, None]
            b = codes[None, :]
            self.add_table = self._from_digits_arr(
                (self.digit_table[:, None, :] + self.digit_table[None, :, :]) % p
            )
            mt = np.zeros((q, q), dtype=np.int64)
            nz = (a != 0) & (b != 0)
            la = np.broadcast_to(self.log_table[:, None], (q, q))
            lb = np.broadcast_to(self.log_table[None, :], (q, q))
            mt[nz] = self.exp_table[(la[nz] + lb[nz]) % (q - 1)]
            self.mul_table = mt

    def _find_primitive(self) -> int:
        n = self.q - 1
        primes = [r for r in range(2, n + 1) if n % r == 0 and is_prime(r)]
        for g in range(1, self.q):
            if all(self._pow_poly(g, n // r) != 1 for r in primes) or n == 1:
                return g
        raise AssertionError("field has no primitive element")

    def _from_digits_arr(self, digits: np.ndarray) -> np.ndarray:
        return (digits * np.array(self._pw, dtype=np.int64)).sum(axis=-1)

    def _poly_mul_codes(self, a: int, b: int) -> int:
        prod = poly_mod(poly_mul(self.to_vec(a), self.to_vec(b), self.p), list(self.modulus), self.p)
        return self.from_vec(prod)

    def _pow_poly(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._poly_mul_codes(result, base)
            base = self._poly_mul_codes(base, base)
            e >>= 1
        return result

    # --- encoding ----------------------------------------------------------

    def to_vec(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.m)]

    def from_vec(self, v) -> int:
        return int(sum((int(c) % self.p) * self.p**i for i, c in enumerate(v)))

    def elem(self, code: int) -> "FieldElem":
        return FieldElem(self, int(code))

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    # --- scalar arithmetic on codes ----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.add_table is not None:
            return int(self.add_table[a, b])
        p = self.p
        return self.from_vec([(x + y) % p for x, y in zip(self.to_vec(a), self.to_vec(b))])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.mul_table is not None:
            return int(self.mul_table[a, b])
        if a == 0 or b == 0:
            return 0
        if self.log_table is not None:
            return int(self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)])
        return self._poly_mul_codes(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no inverse")
        if self.log_table is not None:
            return int(self.inv_table[a])
        return self._pow_poly(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.log_table is not None:
            return int(self.exp_table[(self.log_table[a] * e) % (self.q - 1)])
        return self._pow_poly(a, e)

    def frob(self, a: int, k: int) -> int:
        """a^(p^k); k is reduced mod m."""
        k %= self.m
        if k == 0:
            return int(a)
        if self.log_table is not None:
            return int(self.frob_tables[k, a])
        return self._pow_poly(a, self.p**k)

    # --- vectorized arithmetic on code arrays ------------------------------

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.add_table is not None:
            return self.add_table[a, b]
        if self.p == 2:
            return a ^ b
        da = self.digit_table[a]
        db = self.digit_table[b]
        return self._from_digits_arr((da + db) % self.p)

    def vneg(self, a) -> np.ndarray:
        return self.neg_table[np.asarray(a, dtype=np.int64)]

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.mul_table is not None:
            return self.mul_table[a, b]
        a, b = np.broadcast_arrays(a, b)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        out[nz] = self.exp_table[(self.log_table[a[nz]] + self.log_table[b[nz]]) % (self.q - 1)]
        return out

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if (a == 0).any():
            raise DivisionByZero("zero has no inverse")
        return self.inv_table[a]

    def vfrob(self, a, k) -> np.ndarray:
        """Elementwise a^(p^k); k may be an array broadcast against a."""
        a = np.asarray(a, dtype=np.int64)
        k = np.asarray(k, dtype=np.int64) % self.m
        return self.frob_tables[k, a]

    # --- F_p-linear structure ----------------------------------------------

    def mul_by_matrix(self, a: int) -> np.ndarray:
        """m x m matrix over F_p of x -> a*x in the digit basis (columns = images)."""
        cols = [self.to_vec(self.mul(a, self.p**j)) for j in range(self.m)]
        return np.array(cols, dtype=np.int64).T

    def frob_matrix(self, k: int) -> np.ndarray:
        cols = [self.to_vec(self.frob(self.p**j, k)) for j in range(self.m)]
        return np.array(cols, dtype=np.int64).T

    # --- misc --------------------------------------------------------------

    def spec(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_spec(cls, spec: dict) -> "FiniteField":
        return cls(int(spec["p"]), int(spec.get("m", 1)), spec.get("modulus"))

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.m, self.modulus) == (
            other.p,
            other.m,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"


def field_create(p: int, m: int = 1, modulus: list[int] | None = None) -> FiniteField:
    return FiniteField(p, m, modulus)


@dataclass(frozen=True)
class FieldElem:
    field: FiniteField
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.field.q:
            raise ValueError(f"code {self.code} out of range for {self.field}")

    def _check(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._check(other)
        return FieldElem(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._check(other)
        return FieldElem(self.field, self.field.sub(self.code, b))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        b = self._check(other)
        return FieldElem(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._check(other)
        return FieldElem(self.field, self.field.div(self.code, b))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.code, e))

    def frobenius(self, k: int = 1) -> "FieldElem":
        return FieldElem(self.field, self.field.frob(self.code, k))

    def is_unit(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        return self.code

    def __repr__(self) -> str:
        return f"{self.field!r}({self.code})"


def ff_arith(op: str, a: FieldElem, b) -> FieldElem:
    """Dispatch one of add/sub/mul/div/pow on field elements."""
    if op == "pow":
        return a ** int(b)
    if isinstance(b, FieldElem) and b.field != a.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    return ops[op](b)


def frobenius_apply(a: FieldElem, k: int) -> FieldElem:
    return a.frobenius(k)
