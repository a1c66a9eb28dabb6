"""Anderson-Thakur polynomials H_n and the digit-vector combinatorics
behind them.

H_n is pinned down by

    (1 - sum_i (G_i / D_i|_{theta=t}) x^(q^i))^(-1)
        = sum_n (H_n / Gamma_{n+1}|_{theta=t}) x^n,

with G_0 = 1 and G_i = prod_{j=1..i} (t^(q^i) - theta^(q^j)).  Three
independent routes are implemented:

  * at_poly        -- the linear recurrence
                      H_n/Gamma_{n+1}|_t = sum_i (G_i/D_i|_t) H_{n-q^i}/Gamma|_t,
                      run fraction-free: every Gamma/D ratio is a product of
                      bracket powers [l]|_t = t^(q^l) - t with integer (possibly
                      negative) exponents, so terms are cleared to a common
                      bracket denominator and the sum divided out exactly.
  * at_poly_oracle -- the q-power weighted partition sum with the Lucas
                      filter on multinomial coefficients mod p.
  * at_closed_form / at_special_q3 -- explicit product formulas for indices
                      of the shape q^n - sum N_i q^i - 1 and q^3-q^2+q-2.

All three must agree exactly; any uncancelled denominator raises
DenominatorNotCleared, which indicates an arithmetic bug, never data.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from .bipoly import BiPoly
from .carlitz import CarlitzContext, base_q_digits
from .errors import BudgetExceeded, DenominatorNotCleared, DigitSumTooLarge, QTooSmall
from .polys import T, UniPoly

# --- digit vectors -------------------------------------------------------
# A digit vector (a_0, a_1, ...) is a finite tuple of nonnegative ints with
# trailing zeros implicit; it encodes n = sum a_i q^i.


def vector_value(a, q: int) -> int:
    return sum(ai * q**i for i, ai in enumerate(a))


def last_index(a) -> int | None:
    """Largest i with a_i != 0; None for the zero vector (sentinel)."""
    idx = None
    for i, ai in enumerate(a):
        if ai:
            idx = i
    return idx


def lucas_multinomial(p: int, a) -> int:
    """C_a = (sum a_i)! / prod a_i!  mod p, via base-p digit rows.

    Zero iff a base-p carry occurs in summing the entries; otherwise the
    product over digit positions of the small multinomials of the digit rows.
    """
    a = [ai for ai in a]
    if not a:
        return 1 % p
    rows = []
    rem = list(a)
    while any(rem):
        rows.append([r % p for r in rem])
        rem = [r // p for r in rem]
    total = sum(a)
    tdigits = []
    while total:
        tdigits.append(total % p)
        total //= p
    result = 1
    for j, row in enumerate(rows):
        s = sum(row)
        if s > p - 1:
            return 0  # carry
        # row multinomial: s! / prod(row_i!), with s <= p-1 exact
        m = math.factorial(s)
        for ri in row:
            m //= math.factorial(ri)
        result = result * (m % p) % p
    # sanity: digit rows must reassemble the digits of the total
    del tdigits
    return result


def reduce_vector(q: int, a) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(tilde, double-tilde): entrywise residue and quotient mod q."""
    tilde = tuple(ai % q for ai in a)
    dtilde = tuple((ai - ai % q) // q for ai in a)
    return tilde, dtilde


def weighted_partitions(n: int, q: int):
    """All digit vectors (a_0, ..., a_k) with sum a_i q^i = n, k = floor(log_q n).

    Deterministic: vectors come out in ascending lexicographic order of
    (a_k, ..., a_1), with a_0 forced by the remainder.
    """
    if n == 0:
        yield ()
        return
    k = 0
    while q ** (k + 1) <= n:
        k += 1

    def rec(i: int, rem: int, upper: list[int]):
        if i == 0:
            yield (rem, *upper)
            return
        step = q**i
        for ai in range(rem // step + 1):
            yield from rec(i - 1, rem - ai * step, [ai] + upper)

    yield from rec(k, n, [])


@dataclass(frozen=True)
class ATPolynomial:
    """H_n together with Gamma_{n+1}|_{theta=t}."""

    n: int
    value: BiPoly
    gamma_at_t: UniPoly


class ATContext:
    """Memoized Anderson-Thakur machinery for one field."""

    def __init__(self, carlitz: CarlitzContext, oracle_budget: int = 500_000):
        self.carlitz = carlitz
        self.field = carlitz.field
        self.q = carlitz.q
        self.oracle_budget = oracle_budget
        self._lock = threading.RLock()
        self._G: dict[int, BiPoly] = {}
        self._Gpow: dict[tuple[int, int], BiPoly] = {}
        self._H: dict[int, BiPoly] = {}
        self._gamma_t: dict[int, UniPoly] = {}

    # --- building blocks ---

    def g_poly(self, i: int) -> BiPoly:
        """G_0 = 1; G_i = prod_{j=1..i} (t^(q^i) - theta^(q^j))."""
        if i < 0:
            raise ValueError("G_i needs i >= 0")
        g = self._G.get(i)
        if g is None:
            f, q = self.field, self.q
            g = BiPoly.one(f)
            for j in range(1, i + 1):
                g = g * BiPoly.from_terms(f, [(q**i, 0, 1), (0, q**j, f.minus_one)])
            with self._lock:
                self._G[i] = g
        return g

    def _g_power(self, i: int, e: int) -> BiPoly:
        if e == 1:
            return self.g_poly(i)
        gp = self._Gpow.get((i, e))
        if gp is None:
            gp = self.g_poly(i) ** e
            with self._lock:
                self._Gpow[(i, e)] = gp
        return gp

    def gamma_at_t(self, k: int) -> UniPoly:
        g = self._gamma_t.get(k)
        if g is None:
            g = self.carlitz.brackets_product(self.carlitz.gamma_brackets(k), var=T)
            with self._lock:
                self._gamma_t[k] = g
        return g

    def L_at_t(self, m: int) -> UniPoly:
        return self.carlitz.brackets_product({l: 1 for l in range(1, m + 1)}, var=T)

    def _d_brackets(self, i: int) -> dict[int, int]:
        return self.carlitz.D_brackets(i)

    # --- recurrence route ---

    def at_poly(self, n: int) -> ATPolynomial:
        """H_n by the recurrence; memoized, exact, denominators must clear."""
        if n < 0:
            raise ValueError("H_n needs n >= 0")
        self._ensure_h(n)
        return ATPolynomial(n, self._H[n], self.gamma_at_t(n + 1))

    def _ensure_h(self, n: int):
        if n in self._H:
            return
        q = self.q
        # iterative worklist to keep recursion depth flat on big sweeps
        stack = [n]
        while stack:
            m = stack[-1]
            if m in self._H:
                stack.pop()
                continue
            if m <= q - 1:
                with self._lock:
                    self._H[m] = BiPoly.one(self.field)
                stack.pop()
                continue
            deps = []
            i = 0
            while q**i <= m:
                if (m - q**i) not in self._H:
                    deps.append(m - q**i)
                i += 1
            if deps:
                stack.extend(deps)
                continue
            with self._lock:
                if m not in self._H:
                    self._H[m] = self._compute_h(m)
            stack.pop()

    def _compute_h(self, m: int) -> BiPoly:
        q = self.q
        gamma_top = self.carlitz.gamma_brackets(m + 1)
        ratios = []
        i = 0
        while q**i <= m:
            r = dict(gamma_top)
            for l, e in self._d_brackets(i).items():
                r[l] = r.get(l, 0) - e
            for l, e in self.carlitz.gamma_brackets(m - q**i + 1).items():
                r[l] = r.get(l, 0) - e
            ratios.append({l: e for l, e in r.items() if e})
            i = i + 1
        # common bracket denominator
        den = {}
        for r in ratios:
            for l, e in r.items():
                if e < 0:
                    den[l] = max(den.get(l, 0), -e)
        acc = BiPoly.zero(self.field)
        for i, r in enumerate(ratios):
            mult = {l: e + den.get(l, 0) for l, e in r.items()}
            for l, e in den.items():
                if l not in r:
                    mult[l] = e
            term = self.g_poly(i) * self._H[m - q**i]
            mult_poly = self.carlitz.brackets_product(
                {l: e for l, e in mult.items() if e}, var=T)
            if not mult_poly.is_one():
                term = term.mul_tpoly(mult_poly)
            acc = acc + term
        if den:
            den_poly = self.carlitz.brackets_product(den, var=T)
            try:
                acc = acc.exact_div_tpoly(den_poly)
            except ArithmeticError as exc:
                raise DenominatorNotCleared(
                    f"H_{m}: denominator {den} did not cancel") from exc
        return acc

    # --- partition-oracle route ---

    def at_poly_oracle(self, n: int) -> ATPolynomial:
        """H_n by the q-power weighted partition sum with the Lucas filter."""
        if n < 0:
            raise ValueError("H_n needs n >= 0")
        p = self.field.p
        gamma_top = self.carlitz.gamma_brackets(n + 1)
        # first pass: surviving partitions and the common denominator
        survivors = []
        count = 0
        for a in weighted_partitions(n, self.q):
            count += 1
            if count > self.oracle_budget:
                raise BudgetExceeded(
                    f"partition enumeration for n={n} exceeded budget {self.oracle_budget}")
            c = lucas_multinomial(p, a)
            if c:
                survivors.append((a, c))
        den: dict[int, int] = {}
        ratios = []
        for a, c in survivors:
            r = dict(gamma_top)
            for i, ai in enumerate(a):
                if ai and i:
                    for l, e in self._d_brackets(i).items():
                        r[l] = r.get(l, 0) - ai * e
            r = {l: e for l, e in r.items() if e}
            ratios.append(r)
            for l, e in r.items():
                if e < 0:
                    den[l] = max(den.get(l, 0), -e)
        acc = BiPoly.zero(self.field)
        for (a, c), r in zip(survivors, ratios):
            term = BiPoly.const(self.field, c % p)
            for i, ai in enumerate(a):
                if ai and i:
                    term = term * self._g_power(i, ai)
            mult = {l: e + den.get(l, 0) for l, e in r.items()}
            for l, e in den.items():
                if l not in r:
                    mult[l] = e
            mult_poly = self.carlitz.brackets_product(
                {l: e for l, e in mult.items() if e}, var=T)
            if not mult_poly.is_one():
                term = term.mul_tpoly(mult_poly)
            acc = acc + term
        if den:
            try:
                acc = acc.exact_div_tpoly(self.carlitz.brackets_product(den, var=T))
            except ArithmeticError as exc:
                raise DenominatorNotCleared(
                    f"oracle H_{n}: denominator {den} did not cancel") from exc
        return ATPolynomial(n, acc, self.gamma_at_t(n + 1))

    # --- closed forms ---

    def at_closed_form(self, n: int, N) -> ATPolynomial:
        """H at index q^n - sum N_i q^i - 1 for digit tuples with sum <= q-1:

        H/Gamma|_t = (-1)^(sum_{i<=n-2} (n-1-i) N_i q^i)
                     / prod_{i<=n-2} L_{n-1-i}^(N_i q^i)
                     * prod_{i=1}^{n-1} (t - theta^(q^i))^(sum_{j<=n-1-i} N_j q^j).
        """
        q, f = self.q, self.field
        N = list(N)
        if len(N) < n:
            N = N + [0] * (n - len(N))
        if n < 1 or len(N) > n:
            raise DigitSumTooLarge(f"need 1 <= len(N) <= n, got n={n}, N={N}")
        if any(x < 0 for x in N) or sum(N) > q - 1:
            raise DigitSumTooLarge(f"digit sum {sum(N)} exceeds q-1={q - 1}")
        index = q**n - sum(Ni * q**i for i, Ni in enumerate(N)) - 1
        gamma_t = self.gamma_at_t(index + 1)
        sign_exp = sum((n - 1 - i) * N[i] * q**i for i in range(0, max(0, n - 1)))
        coef = gamma_t.scale(f.sign(sign_exp))
        for i in range(0, n - 1):
            if N[i]:
                coef = coef.exact_div(self.L_at_t(n - 1 - i) ** (N[i] * q**i))
        h = BiPoly.from_t_poly(coef)
        for i in range(1, n):
            e = sum(N[j] * q**j for j in range(0, n - i))
            if e:
                factor = BiPoly.from_terms(f, [(1, 0, 1), (0, q**i, f.minus_one)])
                h = h * factor**e
        return ATPolynomial(index, h, gamma_t)

    def at_special_q3(self) -> ATPolynomial:
        """H at index q^3 - q^2 + q - 2 (q > 2):
        -[2]^(q-2) {(t - theta^q)^(q^2-q+1) + [1]^(q^2-1) (t - theta^q)},
        all brackets evaluated at theta = t.
        """
        q, f = self.q, self.field
        if q == 2:
            raise QTooSmall("the q^3-q^2+q-2 formula requires q > 2")
        index = q**3 - q**2 + q - 2
        b1 = self.carlitz.bracket(1).rename(T)
        b2 = self.carlitz.bracket(2).rename(T)
        lin = BiPoly.from_terms(f, [(1, 0, 1), (0, q, f.minus_one)])  # t - theta^q
        inner = lin ** (q**2 - q + 1) + (lin.mul_tpoly(b1 ** (q**2 - 1)))
        h = -(inner.mul_tpoly(b2 ** (q - 2)))
        return ATPolynomial(index, h, self.gamma_at_t(index + 1))


def generating_identity_residuals(ctx: ATContext, I: int) -> list[BiPoly]:
    """Residual numerators of (1 - sum_{i<=I} (G_i/D_i|_t) x^(q^i))
    * (sum_{n<=q^I} (H_n/Gamma_{n+1}|_t) x^n) - 1 for x-degrees 1..q^I.

    All must be zero.  Computed over a common polynomial denominator in t,
    independent of the exact-division path used inside at_poly.
    """
    q = ctx.q
    top = q**I
    # common denominator: prod_{i<=I} D_i|_t * prod_{n<=top} Gamma_{n+1}|_t is
    # overkill; per-coefficient clearing is enough.
    residuals = []
    for m in range(1, top + 1):
        # c_m = P_m - sum_{q^i <= m, i <= I} (G_i/D_i|_t) P_{m-q^i}
        # cleared by Gamma_{m+1}|_t * prod D_i|_t * prod Gamma_{m-q^i+1}|_t
        terms_i = [i for i in range(0, I + 1) if q**i <= m]
        dprod = UniPoly.one(ctx.field, T)
        for i in terms_i:
            dprod = dprod * ctx.carlitz.brackets_product(ctx._d_brackets(i), var=T)
        gprod = UniPoly.one(ctx.field, T)
        for i in terms_i:
            gprod = gprod * ctx.gamma_at_t(m - q**i + 1)
        lhs = ctx.at_poly(m).value.mul_tpoly(dprod * gprod)
        rhs = BiPoly.zero(ctx.field)
        for i in terms_i:
            other_d = UniPoly.one(ctx.field, T)
            for i2 in terms_i:
                if i2 != i:
                    other_d = other_d * ctx.carlitz.brackets_product(
                        ctx._d_brackets(i2), var=T)
            other_g = UniPoly.one(ctx.field, T)
            for i2 in terms_i:
                if i2 != i:
                    other_g = other_g * ctx.gamma_at_t(m - q**i2 + 1)
            term = ctx.g_poly(i) * ctx.at_poly(m - q**i).value
            term = term.mul_tpoly(other_d * other_g * ctx.gamma_at_t(m + 1))
            rhs = rhs + term
        residuals.append(lhs - rhs)
    return residuals
