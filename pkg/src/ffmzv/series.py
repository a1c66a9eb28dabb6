"""Truncated Laurent series in F_q((1/theta)) with explicit precision markers.

A series is a finite set of (theta-exponent -> coefficient) terms together
with low_known: every coefficient at exponent >= low_known is exact, nothing
is claimed below.  In O-notation the series is f + O(theta^(low_known - 1)).
Arithmetic propagates the marker soundly and never reports a coefficient
beneath it; equality is only ever asserted "down to exponent N", and every
comparison says which N.

Marker propagation for products: with unknown(a) = O(theta^(la-1)) and top
exponents da, db, the cross terms are O(theta^(la-1+db)) + O(theta^(lb-1+da)),
so the product is exact on exponents >= max(la+db, lb+da).  A series that is
zero to its precision uses la-1 in place of its (absent) top exponent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DivisionByZero, EmptyOverlap, FieldMismatch, UnknownLeadingTerm
from .fields import Fq
from .polys import THETA, RatFun, UniPoly


@dataclass(frozen=True)
class AgreementReport:
    equal: bool
    compared_down_to: int
    agreed_terms: int
    first_mismatch: int | None = None

    def to_json(self) -> dict:
        return {"equal": self.equal, "comparedDownTo": self.compared_down_to,
                "agreedTerms": self.agreed_terms, "firstMismatch": self.first_mismatch}


class LaurentSeries:
    """Element of F_q((1/theta)) known exactly on exponents >= low_known."""

    __slots__ = ("field", "terms", "low_known")

    def __init__(self, field: Fq, terms: dict[int, int], low_known: int, *,
                 _normalized: bool = False):
        self.field = field
        self.low_known = low_known
        if not _normalized:
            terms = {e: c for e, c in terms.items() if c and e >= low_known}
        self.terms = terms

    # --- constructors ---

    @classmethod
    def zero(cls, field: Fq, low_known: int) -> "LaurentSeries":
        return cls(field, {}, low_known, _normalized=True)

    @classmethod
    def one(cls, field: Fq, low_known: int) -> "LaurentSeries":
        return cls(field, {0: 1} if low_known <= 0 else {}, low_known, _normalized=True)

    @classmethod
    def monomial(cls, field: Fq, e: int, c: int, low_known: int) -> "LaurentSeries":
        return cls(field, {e: c}, low_known)

    @classmethod
    def from_poly(cls, p: UniPoly, low_known: int) -> "LaurentSeries":
        if p.var != THETA:
            raise FieldMismatch(f"series live in theta, got {p.var!r}")
        return cls(p.field, dict(p.coeffs), low_known)

    # --- structure ---

    def deg(self) -> int | None:
        """Leading (largest known) exponent, None if zero to precision."""
        return max(self.terms) if self.terms else None

    def _top_eff(self) -> int:
        # effective top for marker propagation: unknown part starts at low-1
        return max(self.terms) if self.terms else self.low_known - 1

    def is_zero_to_prec(self) -> bool:
        return not self.terms

    def coeff(self, e: int) -> int:
        if e < self.low_known:
            raise EmptyOverlap(f"coefficient at {e} below precision marker {self.low_known}")
        return self.terms.get(e, 0)

    def truncated(self, low_known: int) -> "LaurentSeries":
        """Weaken (raise) the marker; cannot strengthen."""
        if low_known < self.low_known:
            raise ValueError("cannot lower a precision marker without recomputation")
        return LaurentSeries(self.field, self.terms, low_known)

    def _check(self, other: "LaurentSeries"):
        if self.field != other.field:
            raise FieldMismatch("series over different fields")

    # --- arithmetic ---

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check(other)
        f = self.field
        low = max(self.low_known, other.low_known)
        out = {e: c for e, c in self.terms.items() if e >= low}
        for e, c in other.terms.items():
            if e < low:
                continue
            v = f.add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentSeries(f, out, low, _normalized=True)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __neg__(self) -> "LaurentSeries":
        f = self.field
        return LaurentSeries(f, {e: f.neg(c) for e, c in self.terms.items()}, self.low_known,
                             _normalized=True)

    def scale(self, c: int) -> "LaurentSeries":
        f = self.field
        if c == 0:
            return LaurentSeries.zero(f, self.low_known)
        return LaurentSeries(f, {e: f.mul(cc, c) for e, cc in self.terms.items()},
                             self.low_known, _normalized=True)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check(other)
        f = self.field
        low = max(self.low_known + other._top_eff(), other.low_known + self._top_eff())
        out: dict[int, int] = {}
        mul, add = f.mul, f.add
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = ea + eb
                if e < low:
                    continue
                v = add(out.get(e, 0), mul(ca, cb))
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return LaurentSeries(f, out, low, _normalized=True)

    def inv(self) -> "LaurentSeries":
        """Multiplicative inverse; window length is preserved."""
        if not self.terms:
            raise UnknownLeadingTerm("series is 0 to its precision; cannot invert")
        f = self.field
        v = max(self.terms)
        c = self.terms[v]
        cinv = f.inv(c)
        window = v - self.low_known  # relative depth of knowledge
        # b = inverse of a/(c*theta^v) = 1 - eps, computed by the standard
        # convolution recursion, then shifted by -v and scaled by 1/c.
        a_rel = {v - e: f.mul(cc, cinv) for e, cc in self.terms.items()}  # a_rel[0] = 1
        b_rel = {0: 1}
        for k in range(1, window + 1):
            s = 0
            for j, aj in a_rel.items():
                if 0 < j <= k:
                    bk = b_rel.get(k - j, 0)
                    if bk:
                        s = f.add(s, f.mul(aj, bk))
            if s:
                b_rel[k] = f.neg(s)
        out = {-v - k: f.mul(cc, cinv) for k, cc in b_rel.items()}
        return LaurentSeries(f, out, -v - window, _normalized=True)

    def __pow__(self, e: int) -> "LaurentSeries":
        if e < 0:
            return self.inv() ** (-e)
        if e == 0:
            return LaurentSeries.one(self.field, self.low_known)
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def pow_frobenius(self, n: int) -> "LaurentSeries":
        """q^n-th power: exact coefficientwise Frobenius, marker scales too."""
        s = self.field.q**n
        low = (self.low_known - 1) * s + 1
        return LaurentSeries(self.field, {e * s: c for e, c in self.terms.items()}, low,
                             _normalized=True)

    # --- comparison ---

    def __eq__(self, other):
        return (isinstance(other, LaurentSeries) and self.field == other.field
                and self.low_known == other.low_known and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.low_known, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return self.text()

    def text(self) -> str:
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if e == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(THETA if e == 1 else f"{THETA}^{e}")
            else:
                parts.append(f"{c}*{THETA}" if e == 1 else f"{c}*{THETA}^{e}")
        parts.append(f"O({THETA}^{self.low_known - 1})")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"lowKnown": self.low_known,
                "terms": [[e, self.terms[e]] for e in sorted(self.terms, reverse=True)]}


def _embed_exact(p: UniPoly, marker: int) -> LaurentSeries:
    # an exact polynomial may carry any marker; never drop its terms
    eff = min([marker] + list(p.coeffs)) if p.coeffs else marker
    return LaurentSeries.from_poly(p, eff)


def series_from_ratfun(r: RatFun, low_known: int) -> LaurentSeries:
    """Expansion of a rational function at infinity, exact on >= low_known.

    Leading exponent is deg(num) - deg(den); polynomials come back exact with
    the marker at the requested bound.
    """
    if r.is_zero():
        return LaurentSeries.zero(r.field, low_known)
    num, den = r.num, r.den
    if den.is_one():
        return LaurentSeries.from_poly(num, min(low_known, min(num.coeffs)))
    dd = den.degree
    dn = num.degree
    # markers chosen so the product is exact down to low_known:
    # inv(den) gets marker L_d - 2*dd and the cross terms sit at
    # max((L_d - 2*dd) + dn, L_n - dd).
    inv_den = _embed_exact(den, low_known + 2 * dd - dn).inv()
    out = _embed_exact(num, low_known + dd) * inv_den
    return LaurentSeries(out.field, out.terms, max(out.low_known, low_known))


def series_agree(a: LaurentSeries, b: LaurentSeries) -> AgreementReport:
    """Compare on the overlap of known ranges.

    comparedDownTo is the weakest marker.  agreed_terms counts exponent slots
    from the higher leading exponent down to comparedDownTo.  Raises
    EmptyOverlap when neither side knows a single coefficient in the window,
    which means the caller must raise precision rather than accept a vacuous
    pass.
    """
    a._check(b)
    low = max(a.low_known, b.low_known)
    tops = [t for t in (a.deg(), b.deg()) if t is not None]
    if not tops or max(tops) < low:
        raise EmptyOverlap(f"no known coefficients at or above {low}")
    top = max(tops)
    first_mismatch = None
    for e in range(top, low - 1, -1):
        if a.terms.get(e, 0) != b.terms.get(e, 0):
            first_mismatch = e
            break
    if first_mismatch is None:
        return AgreementReport(True, low, top - low + 1)
    return AgreementReport(False, low, top - first_mismatch, first_mismatch)
