"""Power sums over monic polynomials, truncated zeta and multizeta values.

    S_d(s)             = sum over monic a of degree d of 1/a^s      (exact)
    S_d(s_1, ..., s_r) = S_d(s_1) * sum_{d > d_2 > ... > d_r >= 0}
                             S_{d_2}(s_2) ... S_{d_r}(s_r)          (exact)
    zeta(k)            = sum_d S_d(k)
    zeta(s_1, ..., s_r)= sum over chains d_1 > ... > d_r >= 0 of prod S_{d_i}(s_i)

Exact values are honest enumerations (no closed-form shortcuts); series
values sum the termwise expansions of the same enumeration.

Truncation depth.  The nonarchimedean tail of a zeta sum is controlled by a
valuation bound for S_d(s).  Writing a = theta^d * u with
u = 1 + c_1/theta + ... + c_d/theta^d, the coefficient of theta^(-n) in
sum_u u^(-s) is a sum over monomials prod c_i^(m_i) with sum i*m_i = n;
summing any c_i over F_q kills the monomial unless m_i is a positive
multiple of q-1 (sum_{c in F_q} c^j is -1 when j > 0 and (q-1) | j, else 0,
including j = 0 where it is q = 0 in characteristic p).  Hence n is at least
(q-1)(1 + 2 + ... + d) and

    v(S_d(s)) >= s*d + (q-1) d (d+1) / 2.

This quadratic-in-d bound (sharp at d = 1) is what makes the required
precisions reachable within the enumeration budgets; the linear bound
v >= s*d alone would put them astronomically out of reach.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass

from .carlitz import CarlitzContext
from .errors import BudgetExceeded, EmptyOverlap, WeightNotEven
from .polys import THETA, RatFun, UniPoly
from .reports import FAILED, INCONCLUSIVE, VERIFIED, VerificationReport
from .series import LaurentSeries, series_agree, series_from_ratfun


def default_budget(q: int) -> int:
    """Documented enumeration budgets: q=2: d<=20, q=3: d<=10, else d<=6."""
    if q == 2:
        return 2**20
    if q == 3:
        return 3**10
    return q**6


def tail_valuation(q: int, d: int, s: int) -> int:
    """Proved lower bound for v(S_d(s)); see the module docstring."""
    return s * d + (q - 1) * d * (d + 1) // 2


@dataclass(frozen=True)
class ZetaRequest:
    tuple: tuple[int, ...]
    precision: int          # target number of exact Laurent slots above the marker
    budget: int | None = None

    @property
    def depth(self) -> int:
        return len(self.tuple)

    @property
    def weight(self) -> int:
        return sum(self.tuple)


class PowerSumContext:
    """Enumeration caches for one field; budget is a hard monic-count limit."""

    def __init__(self, carlitz: CarlitzContext, budget: int | None = None):
        self.carlitz = carlitz
        self.field = carlitz.field
        self.q = carlitz.q
        self.budget = budget if budget is not None else default_budget(self.q)
        self._lock = threading.RLock()
        self._exact: dict[tuple[int, int], RatFun] = {}
        self._exact_tuple: dict[tuple[int, tuple[int, ...]], RatFun] = {}
        self._series: dict[tuple[int, int], LaurentSeries] = {}

    # --- enumeration ---

    def _gate(self, d: int):
        if self.q**d > self.budget:
            raise BudgetExceeded(
                f"enumerating q^{d} = {self.q**d} monics exceeds budget {self.budget}")

    def monics(self, d: int):
        """All monic degree-d polynomials, lexicographic in (c_0, ..., c_{d-1})."""
        f = self.field
        for lower in itertools.product(range(self.q), repeat=d):
            coeffs = {d: 1}
            for e, c in enumerate(lower):
                if c:
                    coeffs[e] = c
            yield UniPoly(f, THETA, coeffs, _normalized=True)

    # --- exact route ---

    def power_sum_exact(self, d: int, s: int) -> RatFun:
        """S_d(s) by exhaustive enumeration, reduced; memoized by (d, s)."""
        if d < 0 or s < 1:
            raise ValueError("S_d(s) needs d >= 0 and s >= 1")
        key = (d, s)
        v = self._exact.get(key)
        if v is not None:
            return v
        self._gate(d)
        fractions = [RatFun(UniPoly.one(self.field, THETA), a**s) for a in self.monics(d)]
        v = _balanced_sum(fractions)
        with self._lock:
            self._exact[key] = v
        return v

    def power_sum_tuple_exact(self, d: int, tup) -> RatFun:
        """S_d(s_1, ..., s_r) exactly; depth-1 tuples reduce to S_d(s_1)."""
        tup = tuple(tup)
        if len(tup) == 1:
            return self.power_sum_exact(d, tup[0])
        key = (d, tup)
        v = self._exact_tuple.get(key)
        if v is not None:
            return v
        head, rest = tup[0], tup[1:]
        acc = RatFun.zero(self.field, THETA)
        for d2 in range(d):
            acc = acc + self.power_sum_tuple_exact(d2, rest)
        v = self.power_sum_exact(d, head) * acc
        with self._lock:
            self._exact_tuple[key] = v
        return v

    # --- series route ---

    def power_sum_series(self, d: int, s: int, low_known: int) -> LaurentSeries:
        """S_d(s) as a Laurent series exact on exponents >= low_known."""
        key = (d, s)
        cached = self._series.get(key)
        if cached is not None and cached.low_known <= low_known:
            return cached.truncated(low_known) if cached.low_known < low_known else cached
        self._gate(d)
        f = self.field
        acc = LaurentSeries.zero(f, low_known)
        one = UniPoly.one(f, THETA)
        for a in self.monics(d):
            acc = acc + series_from_ratfun(RatFun(one, a**s), low_known)
        with self._lock:
            self._series[key] = acc
        return acc

    # --- truncation depth selection ---

    def _zeta_depth(self, k: int, needed_v: int) -> int:
        d = 0
        while tail_valuation(self.q, d + 1, k) < needed_v:
            d += 1
        return d

    def _chain_tail(self, tup, D: int) -> int:
        """Tail valuation bound for chains with d_1 > D."""
        r = len(tup)
        v = tail_valuation(self.q, D + 1, tup[0])
        for i in range(1, r):
            v += tail_valuation(self.q, r - 1 - i, tup[i])
        return v

    def _multizeta_depth(self, tup, needed_v: int) -> int:
        D = len(tup) - 1
        while self._chain_tail(tup, D) < needed_v:
            D += 1
        return D

    # --- zeta values ---

    def zeta_to(self, k: int, low_known: int) -> LaurentSeries:
        """zeta(k) exact on exponents >= low_known (leading coefficient 1 at 0)."""
        if k < 1:
            raise ValueError("zeta(k) needs k >= 1 here")
        needed = -low_known + 1
        D = self._zeta_depth(k, max(needed, 1))
        acc = LaurentSeries.zero(self.field, low_known)
        for d in range(D + 1):
            acc = acc + self.power_sum_series(d, k, low_known)
        return LaurentSeries(acc.field, acc.terms, max(acc.low_known, low_known))

    def zeta_value(self, k: int, precision: int) -> LaurentSeries:
        """zeta(k) with at least `precision` exact slots below the leading 1."""
        return self.zeta_to(k, -precision + 1)

    def multizeta_to(self, tup, low_known: int) -> LaurentSeries:
        tup = tuple(tup)
        if len(tup) == 1:
            return self.zeta_to(tup[0], low_known)
        needed = -low_known + 1
        D = self._multizeta_depth(tup, max(needed, 1))
        self._gate(D)
        f = self.field
        acc = LaurentSeries.zero(f, low_known)
        r = len(tup)
        for chain in itertools.combinations(range(D, -1, -1), r):
            prod = self.power_sum_series(chain[0], tup[0], low_known)
            for di, si in zip(chain[1:], tup[1:]):
                if prod.is_zero_to_prec():
                    break
                prod = prod * self.power_sum_series(di, si, low_known)
            acc = acc + prod
        return LaurentSeries(acc.field, acc.terms, max(acc.low_known, low_known))

    def multizeta(self, request: ZetaRequest) -> LaurentSeries:
        if request.budget is not None:
            old = self.budget
            self.budget = request.budget
            try:
                return self.multizeta_to(request.tuple, -request.precision + 1)
            finally:
                self.budget = old
        return self.multizeta_to(request.tuple, -request.precision + 1)

    # --- ratio comparisons ---

    def ratio_check(self, tup, candidate: RatFun, precision: int,
                    family: str = "ratio") -> VerificationReport:
        """Compare zeta(tuple) against candidate * zeta(weight)."""
        if candidate.is_zero():
            raise ValueError("candidate ratio must be nonzero")
        tup = tuple(tup)
        w = sum(tup)
        cand_deg = candidate.num.degree - candidate.den.degree
        low = cand_deg - precision + 1
        rhs = series_from_ratfun(candidate, low) * self.zeta_to(w, low - cand_deg)
        lhs = self.multizeta_to(tup, low)
        return self._report(family, tup, lhs, rhs, precision,
                            {"candidate": repr(candidate), "weight": w})

    def eulerian_check(self, tup, candidate: RatFun, precision: int,
                       family: str = "eulerian") -> VerificationReport:
        """Compare zeta(tuple) against candidate * pi^~^weight; needs (q-1) | w."""
        tup = tuple(tup)
        w = sum(tup)
        if self.q > 2 and w % (self.q - 1) != 0:
            raise WeightNotEven(f"(q-1) does not divide w={w}")
        cand_deg = candidate.num.degree - candidate.den.degree
        pi_deg = self.q * w // (self.q - 1)
        top = cand_deg + pi_deg
        low = top - precision + 1
        rhs = series_from_ratfun(candidate, low - pi_deg) \
            * self.carlitz.pi_power(w, low - cand_deg)
        lhs = self.multizeta_to(tup, low)
        return self._report(family, tup, lhs, rhs, precision,
                            {"candidate": repr(candidate), "weight": w, "pi_power": w})

    def _report(self, family, tup, lhs, rhs, precision, extra) -> VerificationReport:
        params = {"tuple": list(tup), **extra}
        try:
            agree = series_agree(lhs, rhs)
        except EmptyOverlap:
            return VerificationReport(family, self.q, params, "series", INCONCLUSIVE,
                                      agreed_terms=0, min_agreed=precision)
        detail = agree.to_json()
        if agree.equal and agree.agreed_terms >= precision:
            status = VERIFIED
        elif agree.equal:
            status = INCONCLUSIVE
        else:
            status = FAILED
        return VerificationReport(family, self.q, params, "series", status,
                                  agreed_terms=agree.agreed_terms, details=[detail],
                                  min_agreed=precision)


def _balanced_sum(fractions: list[RatFun]) -> RatFun:
    """Tree-shaped sum; keeps intermediate gcd reductions shallow."""
    if not fractions:
        raise ValueError("empty sum")
    work = fractions
    while len(work) > 1:
        nxt = []
        for i in range(0, len(work) - 1, 2):
            nxt.append(work[i] + work[i + 1])
        if len(work) % 2:
            nxt.append(work[-1])
        work = nxt
    return work[0]
