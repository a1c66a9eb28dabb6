"""Finite fields F_q, q = p^m.

Elements are plain Python ints in range(q).  For m = 1 the int is the residue
mod p.  For m > 1 the int encodes the coefficient vector of the residue class
modulo the defining polynomial: e = sum(e_i * p**i) represents
sum(e_i * x**i).  Extension fields carry an explicit irreducible modulus; when
none is given, the smallest monic irreducible of degree m (ordered by the same
integer encoding) is chosen, e.g. x^2+x+1 for F_4.

The Fq object is the arithmetic context: Fq.add, Fq.mul, ... operate on the
int encodings.  A thin FqElement wrapper with operator overloads is provided
for convenience; hot loops work on raw ints.
"""

from __future__ import annotations

import functools

import numpy as np

from .errors import DegreeMismatch, DivisionByZero, FieldMismatch, NonPrimeP, ReducibleModulus

_TABLE_CAP = 2048  # largest q for which extension-field tables are built


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _fp_poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    # dense coefficient lists over F_p, mod is monic
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    m = len(mod) - 1
    for i in range(len(res) - 1, m - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(m):
                res[i - m + j] = (res[i - m + j] - c * mod[j]) % p
    res = res[:m]
    while len(res) < m:
        res.append(0)
    return res


def _fp_poly_divisible(num: list[int], div: list[int], p: int) -> bool:
    num = list(num)
    dd = len(div) - 1
    lead_inv = pow(div[-1], p - 2, p)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            f = c * lead_inv % p
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - f * div[j]) % p
    return all(c == 0 for c in num[:dd])


def _fp_irreducible(coeffs: list[int], p: int) -> bool:
    """Irreducibility over F_p by trial division (degrees here are tiny)."""
    m = len(coeffs) - 1
    if m < 1 or coeffs[-1] == 0:
        return False
    for d in range(1, m // 2 + 1):
        for enc in range(p**d, 2 * p**d):
            div = [(enc // p**i) % p for i in range(d + 1)]
            if _fp_poly_divisible(coeffs, div, p):
                return False
    return True


def _least_irreducible(p: int, m: int) -> tuple[int, ...]:
    for enc in range(p**m, 2 * p**m):
        coeffs = [(enc // p**i) % p for i in range(m + 1)]
        if coeffs[-1] != 1:
            continue
        if _fp_irreducible(coeffs, p):
            return tuple(coeffs)
    raise ReducibleModulus(f"no irreducible of degree {m} over F_{p} found")  # unreachable


class Fq:
    """Immutable descriptor of F_q with element arithmetic on int encodings."""

    __slots__ = ("p", "m", "q", "modulus", "_mul", "_add", "_neg", "_inv",
                 "mul_table", "add_table", "sub_table", "neg_table", "inv_table")

    def __init__(self, p: int, m: int, modulus: tuple[int, ...] | None):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        if m == 1:
            self._mul = lambda a, b: a * b % p
            self._add = lambda a, b: (a + b) % p
            self._neg = lambda a: -a % p
            self._inv = lambda a: pow(a, p - 2, p)
            self.mul_table = None
            self.add_table = None
            self.sub_table = None
            self.neg_table = None
            self.inv_table = None
        else:
            self._build_tables()

    def _decode(self, e: int) -> list[int]:
        p = self.p
        return [(e // p**i) % p for i in range(self.m)]

    def _encode(self, v: list[int]) -> int:
        return sum(c * self.p**i for i, c in enumerate(v))

    def _build_tables(self):
        q, p = self.q, self.p
        if q > _TABLE_CAP:
            raise FieldMismatch(f"extension field with q={q} exceeds table cap {_TABLE_CAP}")
        mod = list(self.modulus)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            va = self._decode(a)
            for b in range(a, q):
                vb = self._decode(b)
                c = self._encode(_fp_poly_mulmod(va, vb, mod, p))
                mul[a, b] = c
                mul[b, a] = c
        idx = np.arange(q)
        add = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            va = self._decode(a)
            for b in range(q):
                vb = self._decode(b)
                add[a, b] = self._encode([(x + y) % p for x, y in zip(va, vb)])
        neg = np.array([self._encode([(-x) % p for x in self._decode(a)]) for a in range(q)],
                       dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            # a^(q-2) = a^(-1)
            acc, base, e = 1, a, q - 2
            while e:
                if e & 1:
                    acc = int(mul[acc, base])
                base = int(mul[base, base])
                e >>= 1
            inv[a] = acc
        sub = add[:, neg]  # sub[a,b] = add[a, neg[b]]
        self.mul_table, self.add_table, self.neg_table, self.inv_table = mul, add, neg, inv
        self.sub_table = sub
        self._mul = lambda a, b: int(mul[a, b])
        self._add = lambda a, b: int(add[a, b])
        self._neg = lambda a: int(neg[a])
        self._inv = lambda a: int(inv[a])
        del idx

    # --- element operations (ints in range(q)) ---

    def add(self, a: int, b: int) -> int:
        return self._add(a, b)

    def sub(self, a: int, b: int) -> int:
        return self._add(a, self._neg(b))

    def neg(self, a: int) -> int:
        return self._neg(a)

    def mul(self, a: int, b: int) -> int:
        return self._mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return self._inv(a)

    def div(self, a: int, b: int) -> int:
        return self._mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        acc, base = 1, a
        while e:
            if e & 1:
                acc = self._mul(acc, base)
            base = self._mul(base, base)
            e >>= 1
        return acc

    def of_int(self, n: int) -> int:
        """Canonical image of an integer (through F_p)."""
        return n % self.p

    @property
    def minus_one(self) -> int:
        return self._neg(1)

    def sign(self, exponent: int) -> int:
        """(-1)**exponent as a field element."""
        return 1 if exponent % 2 == 0 else self.minus_one

    def elements(self):
        return range(self.q)

    def elem(self, value: int) -> "FqElement":
        return FqElement(self, value % self.q if self.m > 1 else value % self.p)

    # --- identity / hashing ---

    def __eq__(self, other):
        return (isinstance(other, Fq) and self.p == other.p and self.m == other.m
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"F_{self.p}"
        return f"F_{self.q}(mod {list(self.modulus)})"

    def describe(self) -> dict:
        d = {"p": self.p, "m": self.m, "q": self.q}
        if self.modulus is not None:
            d["modulus"] = list(self.modulus)
        return d


class FqElement:
    """Operator-overloading wrapper around (field, encoding)."""

    __slots__ = ("field", "value")

    def __init__(self, field: Fq, value: int):
        self.field = field
        self.value = value

    def _check(self, other: "FqElement"):
        if self.field != other.field:
            raise FieldMismatch("elements of different fields")

    def __add__(self, other):
        self._check(other)
        return FqElement(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return FqElement(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return FqElement(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other):
        self._check(other)
        return FqElement(self.field, self.field.div(self.value, other.value))

    def __neg__(self):
        return FqElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FqElement(self.field, self.field.pow(self.value, e))

    def __eq__(self, other):
        return (isinstance(other, FqElement) and self.field == other.field
                and self.value == other.value)

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.value}"


@functools.lru_cache(maxsize=None)
def _field_cached(p: int, m: int, modulus: tuple[int, ...] | None) -> Fq:
    return Fq(p, m, modulus)


def field_create(p: int, m: int = 1, modulus=None) -> Fq:
    """Create (and cache) the field F_{p^m}.

    modulus, when given for m > 1, is the coefficient sequence
    (c_0, ..., c_m) of a monic degree-m irreducible over F_p.
    """
    if not _is_prime(p):
        raise NonPrimeP(f"p={p} is not prime")
    if m < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {m}")
    if m == 1:
        if modulus is not None:
            raise DegreeMismatch("modulus only applies to extension fields (m > 1)")
        return _field_cached(p, 1, None)
    if modulus is None:
        modulus = _least_irreducible(p, m)
    else:
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise DegreeMismatch(f"modulus must be monic of degree {m}")
        if not _fp_irreducible(list(modulus), p):
            raise ReducibleModulus(f"modulus {list(modulus)} is reducible over F_{p}")
    return _field_cached(p, m, modulus)


def field_from_q(q: int) -> Fq:
    """Field of size q with the default modulus (q must be a prime power)."""
    for p in range(2, q + 1):
        if _is_prime(p) and q % p == 0:
            m = 0
            n = q
            while n % p == 0:
                n //= p
                m += 1
            if n != 1:
                raise NonPrimeP(f"q={q} is not a prime power")
            return field_create(p, m)
    raise NonPrimeP(f"q={q} is not a prime power")
