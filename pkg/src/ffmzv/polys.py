"""Exact univariate polynomials and reduced fractions over F_q.

UniPoly is sparse (dict exponent -> nonzero coefficient encoding) with
arbitrary-precision exponents: the rings in play have terms at exponents like
q^(n+r) where sparsity, not degree, is what stays small.  The degree of the
zero polynomial is the sentinel None, never -1.

Canonical text form: terms by descending exponent, e.g. "2*t^3 + 2*t + 2".
Variable names are "th" (theta), "t", "u".
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from . import _dense
from .errors import DivisionByZero, FieldMismatch, VariableMismatch
from .fields import Fq

THETA = "th"
T = "t"
U = "u"

_DENSE_WORK = 20_000   # len(a)*len(b) above which the dense kernel is tried
_DENSE_MAXDEG = 60_000


class UniPoly:
    """Sparse exact polynomial in one named variable over F_q."""

    __slots__ = ("field", "var", "coeffs")

    def __init__(self, field: Fq, var: str, coeffs: dict[int, int] | None = None, *,
                 _normalized: bool = False):
        self.field = field
        self.var = var
        if coeffs is None:
            coeffs = {}
        if not _normalized:
            coeffs = {e: c for e, c in coeffs.items() if c}
        self.coeffs = coeffs

    # --- constructors ---

    @classmethod
    def zero(cls, field: Fq, var: str) -> "UniPoly":
        return cls(field, var, {}, _normalized=True)

    @classmethod
    def one(cls, field: Fq, var: str) -> "UniPoly":
        return cls(field, var, {0: 1}, _normalized=True)

    @classmethod
    def const(cls, field: Fq, var: str, c: int) -> "UniPoly":
        c %= field.p if field.m == 1 else field.q
        return cls(field, var, {0: c} if c else {}, _normalized=True)

    @classmethod
    def monomial(cls, field: Fq, var: str, e: int, c: int = 1) -> "UniPoly":
        return cls(field, var, {e: c} if c else {}, _normalized=True)

    @classmethod
    def from_terms(cls, field: Fq, var: str, terms: Iterable[tuple[int, int]]) -> "UniPoly":
        """Accumulate (exponent, coefficient) pairs; order-independent."""
        acc: dict[int, int] = {}
        for e, c in terms:
            if e < 0:
                raise ValueError("polynomial exponents must be nonnegative")
            v = field.add(acc.get(e, 0), c % field.q if field.m > 1 else c % field.p)
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return cls(field, var, acc, _normalized=True)

    # --- structure ---

    @property
    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial (sentinel, never -1)."""
        return max(self.coeffs) if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == {0: 1}

    def leading_coeff(self) -> int:
        if not self.coeffs:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.coeffs[max(self.coeffs)]

    def _check(self, other: "UniPoly"):
        if self.field != other.field:
            raise FieldMismatch("operands over different fields")
        if self.var != other.var:
            raise VariableMismatch(f"operands in different variables {self.var!r}, {other.var!r}")

    # --- ring operations ---

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for e, c in b.items():
            v = f.add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return UniPoly(f, self.var, out, _normalized=True)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __neg__(self) -> "UniPoly":
        f = self.field
        return UniPoly(f, self.var, {e: f.neg(c) for e, c in self.coeffs.items()},
                       _normalized=True)

    def scale(self, c: int) -> "UniPoly":
        f = self.field
        if c == 0:
            return UniPoly.zero(f, self.var)
        return UniPoly(f, self.var, {e: f.mul(cc, c) for e, cc in self.coeffs.items()},
                       _normalized=True)

    def shift(self, k: int) -> "UniPoly":
        """Multiply by var^k."""
        return UniPoly(self.field, self.var, {e + k: c for e, c in self.coeffs.items()},
                       _normalized=True)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly.zero(f, self.var)
        work = len(a) * len(b)
        if work > _DENSE_WORK and _dense.supported(f):
            da, db = max(a), max(b)
            if da + db < _DENSE_MAXDEG:
                return self._mul_dense(other)
        if len(a) > len(b):
            a, b = b, a
        out: dict[int, int] = {}
        mul, add = f.mul, f.add
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                v = add(out.get(e, 0), mul(ca, cb))
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return UniPoly(f, self.var, out, _normalized=True)

    def _mul_dense(self, other: "UniPoly") -> "UniPoly":
        a = self._to_row()
        b = other._to_row()
        prod = _dense.conv_mod(a, b, self.field)
        return UniPoly.from_row(self.field, self.var, prod[:, 0] if prod.size else prod)

    def _to_row(self) -> np.ndarray:
        d = max(self.coeffs)
        arr = np.zeros((d + 1, 1), dtype=np.int64)
        for e, c in self.coeffs.items():
            arr[e, 0] = c
        return arr

    @classmethod
    def from_row(cls, field: Fq, var: str, row: np.ndarray) -> "UniPoly":
        coeffs = {int(e): int(c) for e, c in enumerate(row) if c}
        return cls(field, var, coeffs, _normalized=True)

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly.one(self.field, self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # --- euclidean structure ---

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """(quotient, remainder) with deg(remainder) < deg(divisor)."""
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        f = self.field
        db = other.degree
        lead_inv = f.inv(other.leading_coeff())
        rem = dict(self.coeffs)
        quo: dict[int, int] = {}
        bterms = [(e, c) for e, c in other.coeffs.items()]
        while rem:
            da = max(rem)
            if da < db:
                break
            fac = f.mul(rem[da], lead_inv)
            quo[da - db] = fac
            for eb, cb in bterms:
                e = da - db + eb
                v = f.sub(rem.get(e, 0), f.mul(fac, cb))
                if v:
                    rem[e] = v
                else:
                    rem.pop(e, None)
        return (UniPoly(f, self.var, quo, _normalized=True),
                UniPoly(f, self.var, rem, _normalized=True))

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("exact division left a remainder")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading_coeff()))

    # --- evaluation / substitution ---

    def eval_elem(self, x: int) -> int:
        """Evaluate at a field element (int encoding)."""
        f = self.field
        acc = 0
        for e, c in self.coeffs.items():
            acc = f.add(acc, f.mul(c, f.pow(x, e)))
        return acc

    def eval_poly(self, x: "UniPoly") -> "UniPoly":
        """Compose: substitute the polynomial x for the variable."""
        acc = UniPoly.zero(x.field, x.var)
        for e, c in self.coeffs.items():
            acc = acc + (x**e).scale(c)
        return acc

    def rename(self, var: str) -> "UniPoly":
        return UniPoly(self.field, var, dict(self.coeffs), _normalized=True)

    # --- comparisons / canonical forms ---

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and self.field == other.field
                and self.var == other.var and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.var, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        return self.text()

    def text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(self.var if e == 1 else f"{self.var}^{e}")
            else:
                parts.append(f"{c}*{self.var}" if e == 1 else f"{c}*{self.var}^{e}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"var": self.var,
                "terms": [[str(e), self.coeffs[e]] for e in sorted(self.coeffs, reverse=True)]}

    @classmethod
    def from_json(cls, field: Fq, data: dict) -> "UniPoly":
        return cls.from_terms(field, data["var"], [(int(e), c) for e, c in data["terms"]])


def subst_theta_to_t(a: UniPoly) -> UniPoly:
    """Rename theta to t (the |_{theta=t} substitution); coefficients unchanged."""
    if a.var != THETA:
        raise VariableMismatch(f"expected a polynomial in {THETA!r}, got {a.var!r}")
    return a.rename(T)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; Euclid with a dense fast path over prime fields."""
    a._check(b)
    f = a.field
    if f.m == 1 and not a.is_zero() and not b.is_zero():
        da, db = a.degree, b.degree
        if min(da, db) > 128 and max(da, db) < _DENSE_MAXDEG:
            return _gcd_dense(a, b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _gcd_dense(a: UniPoly, b: UniPoly) -> UniPoly:
    p = a.field.p
    ra = a._to_row()[:, 0]
    rb = b._to_row()[:, 0]
    while rb.any():
        da = int(np.nonzero(ra)[0][-1])
        db = int(np.nonzero(rb)[0][-1])
        if da < db:
            ra, rb = rb, ra
            da, db = db, da
        lead_inv = pow(int(rb[db]), p - 2, p)
        # reduce ra by rb until degree drops below db
        while True:
            nz = np.nonzero(ra)[0]
            if nz.size == 0 or nz[-1] < db:
                break
            da = int(nz[-1])
            fac = int(ra[da]) * lead_inv % p
            ra[da - db: da + 1] = (ra[da - db: da + 1] - fac * rb[: db + 1]) % p
        ra, rb = rb, ra
    g = UniPoly.from_row(a.field, a.var, ra)
    return g.monic()


class RatFun:
    """Reduced fraction of UniPolys: monic denominator, gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly):
        num._check(den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            num = UniPoly.zero(num.field, num.var)
            den = UniPoly.one(num.field, num.var)
        else:
            g = poly_gcd(num, den)
            if not g.is_one():
                num = num.exact_div(g)
                den = den.exact_div(g)
            lead = den.leading_coeff()
            if lead != 1:
                inv = num.field.inv(lead)
                num = num.scale(inv)
                den = den.scale(inv)
        self.num = num
        self.den = den

    # --- constructors ---

    @classmethod
    def from_poly(cls, p: UniPoly) -> "RatFun":
        return cls(p, UniPoly.one(p.field, p.var))

    @classmethod
    def zero(cls, field: Fq, var: str) -> "RatFun":
        return cls.from_poly(UniPoly.zero(field, var))

    @classmethod
    def one(cls, field: Fq, var: str) -> "RatFun":
        return cls.from_poly(UniPoly.one(field, var))

    @property
    def field(self) -> Fq:
        return self.num.field

    @property
    def var(self) -> str:
        return self.num.var

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def as_poly(self) -> UniPoly:
        if not self.den.is_one():
            raise ArithmeticError(f"not a polynomial: denominator {self.den}")
        return self.num

    # --- field operations ---

    def __add__(self, other: "RatFun") -> "RatFun":
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFun") -> "RatFun":
        return RatFun(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFun":
        r = RatFun.__new__(RatFun)
        r.num = -self.num
        r.den = self.den
        return r

    def __mul__(self, other: "RatFun") -> "RatFun":
        return RatFun(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFun") -> "RatFun":
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def inv(self) -> "RatFun":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatFun(self.den, self.num)

    def __pow__(self, e: int) -> "RatFun":
        if e < 0:
            return self.inv() ** (-e)
        return RatFun(self.num**e, self.den**e)

    def scale(self, c: int) -> "RatFun":
        r = RatFun.__new__(RatFun)
        if c == 0:
            return RatFun.zero(self.field, self.var)
        r.num = self.num.scale(c)
        r.den = self.den
        return r

    def __eq__(self, other):
        return (isinstance(other, RatFun) and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.is_one():
            return self.num.text()
        return f"({self.num.text()}) / ({self.den.text()})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def ratfun_make(num: UniPoly, den: UniPoly) -> RatFun:
    """Reduced fraction with monic denominator (canonical form)."""
    return RatFun(num, den)
