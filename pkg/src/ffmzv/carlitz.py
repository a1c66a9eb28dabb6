"""Brackets, Carlitz factorials, Bernoulli-Carlitz numbers, period powers,
and the binomial polynomials Psi_k.

Everything here is exact:

    [n]   = theta^(q^n) - theta
    D_n   = prod_{i=0}^{n-1} (theta^(q^n) - theta^(q^i)) = [n][n-1]^q...[1]^(q^(n-1))
    L_n   = prod_{i=1}^{n}   (theta^(q^i) - theta)       = [n][n-1]...[1]
    Gamma_k = prod_i D_i^(n_i)  where k-1 = sum n_i q^i in base q

Gamma takes the subscript k directly and reads the digits of k-1; a single
convention avoids the off-by-one drift between Gamma_{n+1}, Gamma_{s_i},
Gamma_w usages.

BC(n) comes from inverting exp_C(z)/z = sum z^(q^i - 1)/D_i as a formal power
series with exact K-coefficients; the inversion recursion is sparse because
the input only has terms at exponents q^i - 1.

pi^~ itself is never represented (it needs a (q-1)-st root of -theta); only
pi^~ to powers divisible by q-1, which live in F_q((1/theta)):
pi^~^(q-1) = (-theta)^q * prod_{i>=1} (1 - theta^(1-q^i))^-(q-1).
"""

from __future__ import annotations

import threading

from .errors import BracketZeroIndex, NonpositiveIndex, WeightNotEven
from .fields import Fq
from .polys import THETA, RatFun, UniPoly
from .series import LaurentSeries


def base_q_digits(n: int, q: int) -> list[int]:
    """Base-q digits of n >= 0, least significant first ([] for 0)."""
    digits = []
    while n:
        n, r = divmod(n, q)
        digits.append(r)
    return digits


class CarlitzContext:
    """Shared caches for one field; reads are lock-free, writes synchronized."""

    def __init__(self, field: Fq):
        self.field = field
        self.q = field.q
        self._lock = threading.RLock()
        self._brackets: dict[int, UniPoly] = {}
        self._D: dict[int, UniPoly] = {}
        self._L: dict[int, UniPoly] = {}
        self._gamma: dict[int, UniPoly] = {}
        self._bc_inv: list[RatFun] = []  # coefficients of z/exp_C(z)

    # --- brackets and their products ---

    def bracket(self, n: int) -> UniPoly:
        """[n] = theta^(q^n) - theta, n >= 1."""
        if n < 1:
            raise BracketZeroIndex("[0] is undefined")
        b = self._brackets.get(n)
        if b is None:
            f = self.field
            b = UniPoly.from_terms(f, THETA, [(self.q**n, 1), (1, f.minus_one)])
            with self._lock:
                self._brackets[n] = b
        return b

    def D(self, n: int) -> UniPoly:
        """D_n, with D_0 = 1 (empty product)."""
        if n < 0:
            raise NonpositiveIndex("D_n needs n >= 0")
        d = self._D.get(n)
        if d is None:
            if n == 0:
                d = UniPoly.one(self.field, THETA)
            else:
                d = self.bracket(n) * (self.D(n - 1) ** self.q)
            with self._lock:
                self._D[n] = d
        return d

    def L(self, n: int) -> UniPoly:
        """L_n, with L_0 = 1 (empty product)."""
        if n < 0:
            raise NonpositiveIndex("L_n needs n >= 0")
        l = self._L.get(n)
        if l is None:
            if n == 0:
                l = UniPoly.one(self.field, THETA)
            else:
                l = self.bracket(n) * self.L(n - 1)
            with self._lock:
                self._L[n] = l
        return l

    def bracket_D_L(self, n: int):
        """([n], D_n, L_n); the bracket slot is None for n = 0."""
        return (self.bracket(n) if n >= 1 else None, self.D(n), self.L(n))

    def D_brackets(self, n: int) -> dict[int, int]:
        """D_n as bracket exponents: {l: q^(n-l) for l = 1..n}."""
        return {l: self.q ** (n - l) for l in range(1, n + 1)}

    # --- Carlitz factorial ---

    def gamma(self, k: int) -> UniPoly:
        """Gamma_k = prod D_i^(n_i), digits n_i of k-1 in base q; k >= 1."""
        if k < 1:
            raise NonpositiveIndex(f"Gamma_k needs k >= 1, got {k}")
        g = self._gamma.get(k)
        if g is None:
            g = UniPoly.one(self.field, THETA)
            for i, d in enumerate(base_q_digits(k - 1, self.q)):
                if d:
                    g = g * (self.D(i) ** d)
            with self._lock:
                self._gamma[k] = g
        return g

    def gamma_brackets(self, k: int) -> dict[int, int]:
        """Gamma_k as bracket exponents {l: e_l} (exact factorization)."""
        if k < 1:
            raise NonpositiveIndex(f"Gamma_k needs k >= 1, got {k}")
        out: dict[int, int] = {}
        for i, d in enumerate(base_q_digits(k - 1, self.q)):
            if d:
                # D_i = prod_{l=1..i} [l]^(q^(i-l))
                for l in range(1, i + 1):
                    out[l] = out.get(l, 0) + d * self.q ** (i - l)
        return out

    def brackets_product(self, exps: dict[int, int], var: str = THETA) -> UniPoly:
        """prod [l]^(e_l) as a polynomial in the given variable."""
        acc = UniPoly.one(self.field, var)
        for l in sorted(exps):
            e = exps[l]
            if e < 0:
                raise ValueError("negative bracket exponent in product")
            if e:
                b = self.bracket(l) if var == THETA else self.bracket(l).rename(var)
                acc = acc * (b ** e)
        return acc

    # --- Bernoulli-Carlitz ---

    def _extend_bc(self, n: int):
        f = self.field
        one = RatFun.one(f, THETA)
        zero = RatFun.zero(f, THETA)
        if not self._bc_inv:
            self._bc_inv.append(one)  # constant term of the inverse
        # exp_C(z)/z = sum_i z^(q^i - 1)/D_i ; a_0 = 1
        while len(self._bc_inv) <= n:
            k = len(self._bc_inv)
            s = zero
            i = 1
            while self.q**i - 1 <= k:
                e = self.q**i - 1
                prev = self._bc_inv[k - e]
                if not prev.is_zero():
                    s = s + prev * RatFun(UniPoly.one(f, THETA), self.D(i))
                i += 1
            self._bc_inv.append(-s)

    def bernoulli_carlitz(self, n: int) -> RatFun:
        """BC(n): z/exp_C(z) = sum BC(n)/Gamma_{n+1} z^n, computed exactly."""
        if n < 0:
            raise NonpositiveIndex("BC(n) needs n >= 0")
        with self._lock:
            self._extend_bc(n)
            coeff = self._bc_inv[n]
        return coeff * RatFun.from_poly(self.gamma(n + 1))

    # --- fundamental period powers ---

    def pi_power(self, w: int, low_known: int) -> LaurentSeries:
        """pi^~^w in F_q((1/theta)); requires (q-1) | w.

        pi^~^(q-1) = (-theta)^q prod_{i>=1}(1 - theta^(1-q^i))^-(q-1), leading
        term (-1)^q theta^q.  Factors with q^i - 1 beyond the needed window
        multiply the result by 1 + O(theta^(1-q^i)) and are dropped with the
        marker capped accordingly.
        """
        q = self.q
        if w <= 0 or (q > 2 and w % (q - 1) != 0):
            raise WeightNotEven(f"w={w} must be positive and divisible by q-1={q - 1}")
        k = w // (q - 1)
        f = self.field
        # base window: needs q*k - base_low <= low_known after k-th power
        base_low = low_known - q * k + q
        base = LaurentSeries.monomial(f, q, f.sign(q), base_low)
        i = 1
        while 1 - q**i >= base_low - q - 1:
            factor = LaurentSeries(f, {0: 1, 1 - q**i: f.minus_one}, base_low - q - 1)
            base = base * factor.inv() ** (q - 1)
            i += 1
        # first omitted factor contributes 1 + O(theta^(1 - q^i))
        cap = q + 2 - q**i
        base = LaurentSeries(base.field, base.terms, max(base.low_known, min(cap, base_low)))
        out = base ** k
        return LaurentSeries(out.field, out.terms, max(out.low_known, low_known))

    # --- Anderson-Thakur binomial polynomials ---

    def psi_binomial(self, k: int) -> list[RatFun]:
        """Coefficients of Psi_k: entry i is the coefficient of x^(q^i), i = 0..k:
        prod_{j=1..i}(theta^(q^i) - theta^(q^(k+j))) / (D_i * ((-1)^k L_k)^(q^i)).
        """
        if k < 0:
            raise NonpositiveIndex("Psi_k needs k >= 0")
        f = self.field
        q = self.q
        out = []
        lk = self.L(k).scale(f.sign(k))  # (-1)^k L_k
        for i in range(k + 1):
            num = UniPoly.one(f, THETA)
            for j in range(1, i + 1):
                num = num * UniPoly.from_terms(
                    f, THETA, [(q**i, 1), (q ** (k + j), f.minus_one)])
            den = self.D(i) * lk ** (q**i)
            out.append(RatFun(num, den))
        return out

    def psi_eval(self, k: int, a: UniPoly) -> RatFun:
        """Exact Psi_k(a) for a in F_q[theta].

        Summed over the common denominator lcm_i(D_i L_{k-i}^(q^i)), kept in
        factored bracket form: the reduced coefficient of x^(q^i) is
        (-1)^(i + k q^i) / (D_i L_{k-i}^(q^i)), so no dense gcds ever arise.
        """
        q, f = self.q, self.field
        dens = []
        for i in range(k + 1):
            exps: dict[int, int] = {}
            for l, e in self.D_brackets(i).items():
                exps[l] = exps.get(l, 0) + e
            for l in range(1, k - i + 1):
                exps[l] = exps.get(l, 0) + q**i
            dens.append(exps)
        lcm = {}
        for exps in dens:
            for l, e in exps.items():
                lcm[l] = max(lcm.get(l, 0), e)
        num = UniPoly.zero(f, THETA)
        for i in range(k + 1):
            cofactor = {l: lcm[l] - dens[i].get(l, 0) for l in lcm}
            sign = f.sign(i + k * q**i)
            term = self.brackets_product(cofactor) * a ** (q**i)
            num = num + term.scale(sign)
        return RatFun(num, self.brackets_product(lcm))
