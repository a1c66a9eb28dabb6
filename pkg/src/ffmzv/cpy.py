"""The Chang-Papanikolas-Yu delta-equation systems as decidable identities.

For a tuple (s_1, ..., s_r) with weight w and suffix sums
sigma_i = s_i + ... + s_r, zeta-likeness is equivalent to solvability of

    delta_1 = delta_1^(-1) (t-theta)^w + delta_2^(-1) H_{s_1-1}^(-1) (t-theta)^w
              + b H_{w-1}^(-1) (t-theta)^w
    delta_i = delta_i^(-1) (t-theta)^sigma_i
              + delta_{i+1}^(-1) H_{s_i-1}^(-1) (t-theta)^sigma_i     (1 < i < r)
    delta_r = delta_r^(-1) (t-theta)^{s_r} + a H_{s_r-1}^(-1) (t-theta)^{s_r}

with delta_i in Kbar[t], a, b in F_q[t].  Verification runs on the
once-twisted-up equivalent

    delta_i^(1) = (delta_i + delta_{i+1} H_{s_i-1} [+ b H_{w-1}]) (t-theta^q)^sigma_i

which is a polynomial identity in F_q[u][t] (a, b are Frobenius-fixed), so no
fallible twist_down is ever needed for checking.  When (q-1) does not divide
w, a solution pins the ratio:

    a(theta) Gamma_{s_1} ... Gamma_{s_r} zeta(s_1,...,s_r)
        + b(theta) Gamma_w zeta(w) = 0.

Root depth defaults to the depth r; the explicit solutions below use
fractional powers no deeper than theta^(1/q^(r-1)).
"""

from __future__ import annotations

from dataclasses import dataclass

from .anderson_thakur import ATContext
from .bipoly import BiPoly
from .carlitz import CarlitzContext
from .errors import (BadPPower, ConditionViolated, DegenerateA, DepthTooSmall,
                     DigitSumTooLarge, QTooSmall, RootDepthMismatch, WeightEven)
from .fields import Fq
from .polys import T, THETA, RatFun, UniPoly
from .reports import CheckReport
from .twist import TwistedPoly, twist_down, twist_up


@dataclass
class DeltaSystem:
    """Equations for one tuple, with the Anderson-Thakur data attached.

    full=True is the paper's system (b-term in the first equation);
    full=False is a trailing subsystem starting at some index j >= 2, whose
    first equation is of the middle form.
    """

    field: Fq
    tuple: tuple[int, ...]
    weight: int
    root_depth: int
    sigmas: tuple[int, ...]
    H_list: list[TwistedPoly]      # H_{s_i - 1} embedded, one per tuple entry
    H_w: TwistedPoly | None        # H_{w-1}, full systems only
    full: bool

    @property
    def depth(self) -> int:
        return len(self.tuple)

    def describe(self) -> dict:
        return {"tuple": list(self.tuple), "weight": self.weight,
                "rootDepth": self.root_depth, "sigmas": list(self.sigmas),
                "full": self.full}


@dataclass
class SolutionBundle:
    """Candidate (a, b, delta_1..delta_r); b is None for subsystem fragments."""

    a: UniPoly
    b: UniPoly | None
    deltas: list[TwistedPoly]

    @property
    def root_depth(self) -> int:
        return self.deltas[0].root_depth

    @property
    def degenerate(self) -> bool:
        return (self.a.is_zero() and (self.b is None or self.b.is_zero())
                and all(d.is_zero() for d in self.deltas))

    def scaled(self, f: UniPoly) -> "SolutionBundle":
        """The f-scaled bundle (f delta_1, ..., f a, f b), f in F_q[t]."""
        return SolutionBundle(
            self.a * f,
            None if self.b is None else self.b * f,
            [d.mul_tpoly(f) for d in self.deltas],
        )

    def to_json(self) -> dict:
        return {"rootDepth": self.root_depth,
                "a": self.a.to_json(),
                "b": self.b.to_json() if self.b is not None else None,
                "deltas": [d.to_json() for d in self.deltas]}

    @classmethod
    def from_json(cls, field: Fq, data: dict) -> "SolutionBundle":
        r = data["rootDepth"]
        a = UniPoly.from_json(field, data["a"])
        b = None if data.get("b") is None else UniPoly.from_json(field, data["b"])
        deltas = []
        for d in data["deltas"]:
            d = dict(d)
            d.setdefault("rootDepth", r)
            deltas.append(TwistedPoly.from_json(field, d))
        return cls(a, b, deltas)


# --- system construction --------------------------------------------------


def _suffix_sums(tup) -> tuple[int, ...]:
    out = []
    acc = 0
    for s in reversed(tup):
        acc += s
        out.append(acc)
    return tuple(reversed(out))


def build_system(at: ATContext, tup, root_depth: int | None = None) -> DeltaSystem:
    """The full system for a tuple of depth >= 2."""
    tup = tuple(tup)
    if len(tup) < 2:
        raise DepthTooSmall(f"CPY system needs depth >= 2, got {tup}")
    if any(s < 1 for s in tup):
        raise ValueError("tuple entries must be positive")
    R = root_depth if root_depth is not None else len(tup)
    w = sum(tup)
    H_list = [TwistedPoly.from_bipoly(at.at_poly(s - 1).value, R) for s in tup]
    H_w = TwistedPoly.from_bipoly(at.at_poly(w - 1).value, R)
    return DeltaSystem(at.field, tup, w, R, _suffix_sums(tup), H_list, H_w, True)


def build_subsystem(at: ATContext, tup, root_depth: int | None = None) -> DeltaSystem:
    """A trailing subsystem (no b-term); depth 1 is allowed."""
    tup = tuple(tup)
    if len(tup) < 1:
        raise DepthTooSmall("subsystem needs depth >= 1")
    R = root_depth if root_depth is not None else len(tup)
    w = sum(tup)
    H_list = [TwistedPoly.from_bipoly(at.at_poly(s - 1).value, R) for s in tup]
    return DeltaSystem(at.field, tup, w, R, _suffix_sums(tup), H_list, None, False)


# --- checking -------------------------------------------------------------


def _t_minus_theta_q(field: Fq, R: int) -> TwistedPoly:
    # (t - theta^q) at root depth R
    return TwistedPoly(field, R, {(1, 0): 1, (0, field.q ** (R + 1)): field.minus_one})


def check_solution(system: DeltaSystem, sol: SolutionBundle) -> CheckReport:
    """Exact verification of the once-twisted-up equations."""
    if sol.deltas and sol.root_depth != system.root_depth:
        raise RootDepthMismatch(
            f"bundle at depth {sol.root_depth}, system at {system.root_depth}")
    if len(sol.deltas) != system.depth:
        raise DepthTooSmall(
            f"bundle has {len(sol.deltas)} deltas for a depth-{system.depth} system")
    field, R = system.field, system.root_depth
    r = system.depth
    base = _t_minus_theta_q(field, R)
    a_tw = TwistedPoly.from_t_poly(sol.a, R)
    failing = None
    # bottom-up, the order in which the system is solved: E_r first
    for i in range(r, 0, -1):
        delta = sol.deltas[i - 1]
        inner = delta
        if i < r:
            inner = inner + sol.deltas[i] * system.H_list[i - 1]
        if i == 1 and system.full:
            if sol.b is None:
                raise ValueError("full system check requires b")
            inner = inner + TwistedPoly.from_t_poly(sol.b, R) * system.H_w
        if i == r:
            inner = inner + a_tw * system.H_list[r - 1]
        rhs = inner * base ** system.sigmas[i - 1]
        if twist_up(delta) != rhs:
            failing = i
            break
    return CheckReport(failing is None, failing, sol.degenerate)


def check_solution_untwisted(system: DeltaSystem, sol: SolutionBundle) -> CheckReport:
    """Cross-validation path: the original equations via twist_down.

    Only usable when every delta and H is twist-divisible at this root depth;
    raises NotTwistDivisible otherwise.
    """
    field, R = system.field, system.root_depth
    r = system.depth
    base = TwistedPoly.theta_root_linear(field, R, 0)  # t - theta
    a_tw = TwistedPoly.from_t_poly(sol.a, R)
    failing = None
    for i in range(r, 0, -1):
        delta = sol.deltas[i - 1]
        inner = twist_down(delta)
        if i < r:
            inner = inner + twist_down(sol.deltas[i]) * twist_down(system.H_list[i - 1])
        if i == 1 and system.full:
            inner = inner + TwistedPoly.from_t_poly(sol.b, R) * twist_down(system.H_w)
        if i == r:
            inner = inner + a_tw * twist_down(system.H_list[r - 1])
        rhs = inner * base ** system.sigmas[i - 1]
        if delta != rhs:
            failing = i
            break
    return CheckReport(failing is None, failing, sol.degenerate)


# --- explicit solution constructors ----------------------------------------


def _is_p_power_leq_q(field: Fq, x: int) -> bool:
    if x < 1 or x > field.q:
        return False
    while x % field.p == 0:
        x //= field.p
    return x == 1


def _root_product(field: Fq, R: int, depth: int, power: int) -> TwistedPoly:
    """[(t - theta)(t - theta^(1/q)) ... (t - theta^(1/q^depth))]^power."""
    acc = TwistedPoly.one(field, R)
    for j in range(depth + 1):
        acc = acc * TwistedPoly.theta_root_linear(field, R, j) ** power
    return acc


def build_subsystem_family(at: ATContext, pM: int, m: int, r: int, j: int = 2):
    """The explicit subsystem solution for s_i = pM (q-1) q^(m+i-2), i = 2..r:

        f_r = [2]^(pM q^(r+m-3)) ... [r-1]^(pM q^m) Gamma_{pM q^(m+r-2)(q-1)}
        f_i = -f_{i+1} Gamma_{pM q^(m+i-2)(q-1)} / [r-i+1]^(pM q^(m+i-2))
        delta_i = f_i|_t [(t-theta)...(t-theta^(1/q^(r-i)))]^(pM q^(r+m-1))
        a = -([1]^(pM q^(r+m-2)) ... [r-1]^(pM q^m))|_t

    Returns (system, bundle, f) where system is the trailing subsystem for
    (s_j, ..., s_r), bundle carries (a, delta_j..delta_r), and f maps i to
    the polynomial f_i (kept for the Remark-level f_2 closed form).
    """
    field = at.field
    q = at.q
    if r < 2:
        raise DepthTooSmall("the subsystem family needs r >= 2")
    if not 2 <= j <= r:
        raise ValueError(f"start index j must satisfy 2 <= j <= r, got {j}")
    if m < 0:
        raise ValueError("shift m must be >= 0")
    if not _is_p_power_leq_q(field, pM):
        raise BadPPower(f"pM={pM} is not a power of p={field.p} with 1 <= pM <= q")
    car = at.carlitz
    s = {i: pM * (q - 1) * q ** (m + i - 2) for i in range(2, r + 1)}
    f: dict[int, UniPoly] = {}
    f[r] = car.gamma(pM * q ** (m + r - 2) * (q - 1))
    for k in range(2, r):
        f[r] = f[r] * car.bracket(k) ** (pM * q ** (r + m - 1 - k))
    for i in range(r - 1, j - 1, -1):
        num = (-f[i + 1]) * car.gamma(pM * q ** (m + i - 2) * (q - 1))
        f[i] = num.exact_div(car.bracket(r - i + 1) ** (pM * q ** (m + i - 2)))
    R = r
    P = pM * q ** (r + m - 1)
    deltas = []
    for i in range(j, r + 1):
        coeff = f[i].rename(T)
        deltas.append(_root_product(field, R, r - i, P).mul_tpoly(coeff))
    a = UniPoly.one(field, THETA)
    for k in range(1, r):
        a = a * car.bracket(k) ** (pM * q ** (r + m - 1 - k))
    a = (-a).rename(T)
    subtuple = tuple(s[i] for i in range(j, r + 1))
    system = build_subsystem(at, subtuple, R)
    return system, SolutionBundle(a, None, deltas), f


def build_solution_thm_a(at: ATContext, n: int):
    """Full bundle for (1, q^2-1, (q-1)q^2, ..., (q-1)q^(n+1)), q > 2.

    Uses the subsystem family at pM=1, m=1, r=n+2 for delta_3.. and the
    explicit delta_2, F_j chain, b of the theorem:

        B   = (-1)^(n+1) [n+1]^q Gamma_w |_t,  w = q^(n+2)
        F_0 = B (t-theta)^w
        F_1 = B (t-theta)^w (t-theta^(q^(n+1)))
        F_i = F_{i-1}^(-1) (t-theta)^w                  (2 <= i <= n+1)
        delta_1 = sum F_j;  delta_2 = -F_{n+1}
        f = -([n+2] L_1 ... L_{n+1})|_t
        b = (-1)^n ([n+2]-1) [n+1]^q |_t

    and the final bundle is (f a, b, delta_1, delta_2, f delta_3, ...).
    """
    field, q = at.field, at.q
    if q == 2:
        raise QTooSmall("theorem requires q > 2")
    if n < 0:
        raise ValueError("n >= 0")
    car = at.carlitz
    r = n + 2
    tup = (1, q**2 - 1) + tuple((q - 1) * q ** (i - 1) for i in range(3, r + 1))
    w = q ** (n + 2)
    R = r
    if n >= 1:
        _, frag, _ = build_subsystem_family(at, 1, 1, r, j=3)
        a_sub = frag.a
        frag_deltas = frag.deltas
    else:
        a_sub = (-(car.bracket(1) ** q)).rename(T)
        frag_deltas = []
    f = -((car.bracket(n + 2) * _l_prod(car, 1, n + 1)).rename(T))
    b_poly = ((car.bracket(n + 2) - UniPoly.one(field, THETA))
              * car.bracket(n + 1) ** q).rename(T).scale(field.sign(n))
    B = ((car.bracket(n + 1) ** q) * car.gamma(w)).rename(T).scale(field.sign(n + 1))
    t_m_theta = TwistedPoly.theta_root_linear(field, R, 0)
    tmt_w = t_m_theta ** w
    F = [tmt_w.mul_tpoly(B)]
    F.append(F[0] * _t_minus_theta_qpow(field, R, n + 1))
    for _ in range(2, n + 2):
        F.append(twist_down(F[-1]) * tmt_w)
    delta_1 = F[0]
    for Fi in F[1:]:
        delta_1 = delta_1 + Fi
    delta_2 = _root_product(field, R, n, w) * _t_minus_theta_qpow(field, R, 1)
    delta_2 = delta_2.mul_tpoly(((car.bracket(n + 1) ** q) * car.gamma(w)).rename(T)
                                .scale(field.sign(n)))
    assert delta_2 == -F[n + 1], "delta_2 must close the F-chain"
    deltas = [delta_1, delta_2] + [d.mul_tpoly(f) for d in frag_deltas]
    bundle = SolutionBundle(a_sub * f, b_poly, deltas)
    system = build_system(at, tup, R)
    return system, bundle


def _t_minus_theta_qpow(field: Fq, R: int, k: int) -> TwistedPoly:
    # t - theta^(q^k)
    return TwistedPoly(field, R, {(1, 0): 1, (0, field.q ** (R + k)): field.minus_one})


def _l_prod(car: CarlitzContext, lo: int, hi: int) -> UniPoly:
    acc = UniPoly.one(car.field, THETA)
    for i in range(lo, hi + 1):
        acc = acc * car.L(i)
    return acc


def build_solution_thm_b(at: ATContext, n: int, N, pm: int, r: int):
    """Full bundle for (q^n - sum N_i q^i, pm(q-1)q^(n-1), ..., pm(q-1)q^(n+r-3)).

    Hypotheses: q > 2, n >= 1, r >= 2, 1 <= sum N_i <= q-1, pm a p-power
    <= q, and (q-1) s_1 <= s_2 (equivalently N_{n-1} >= q - pm).

    b = -f_2|_t B_1 and f_1 = B_2, where B_1, B_2 are the t-only parts of
    H_{s_1-1} and H_{w-1} in the closed form, and the delta_1 chain is
    F_0 = b H_{w-1}^(-1) (t-theta)^w, F_i = F_{i-1}^(-1) (t-theta)^w,
    delta_1 = F_0 + ... + F_{r-2}.

    Returns (system, bundle, printed_ratio) with printed_ratio the theorem's
    ratio display as a RatFun in theta (None when (q-1) | w).
    """
    field, q = at.field, at.q
    if q == 2:
        raise QTooSmall("theorem requires q > 2")
    if n < 1 or r < 2:
        raise ValueError("need n >= 1 and r >= 2")
    if not _is_p_power_leq_q(field, pm):
        raise BadPPower(f"pm={pm} is not a p-power with 1 <= pm <= q")
    N = list(N)
    if len(N) != n or any(x < 0 for x in N):
        raise DigitSumTooLarge(f"N must be n={n} nonnegative digits, got {N}")
    if not 1 <= sum(N) <= q - 1:
        raise DigitSumTooLarge(f"need 1 <= sum N_i <= q-1, got sum {sum(N)}")
    s1 = q**n - sum(Ni * q**i for i, Ni in enumerate(N))
    s2 = pm * (q - 1) * q ** (n - 1)
    if (q - 1) * s1 > s2:
        raise ConditionViolated(
            f"(q-1) s_1 = {(q - 1) * s1} > s_2 = {s2}; hypothesis fails")
    car = at.carlitz
    tup = (s1,) + tuple(pm * (q - 1) * q ** (n + i - 3) for i in range(2, r + 1))
    w = sum(tup)
    R = r
    _, frag, f = build_subsystem_family(at, pm, n - 1, r, j=2)
    # shifted digit vector N' of length n+r-1 with the same digit sum
    Np = list(N[: n - 1]) + [N[n - 1] - (q - pm)] + [0] * (r - 2) + [q - pm]
    assert len(Np) == n + r - 1 and q ** (n + r - 1) - sum(
        Ni * q**i for i, Ni in enumerate(Np)) == w
    B1 = _closed_form_t_part(at, n, N)
    B2 = _closed_form_t_part(at, n + r - 1, Np)
    b_poly = -(f[2].rename(T) * B1)
    f1 = B2
    Hw = at.at_closed_form(n + r - 1, Np)
    F = [twist_down(TwistedPoly.from_bipoly(Hw.value, R)).mul_tpoly(b_poly)
         * TwistedPoly.theta_root_linear(field, R, 0) ** w]
    for _ in range(1, r - 1):
        F.append(twist_down(F[-1]) * TwistedPoly.theta_root_linear(field, R, 0) ** w)
    delta_1 = F[0]
    for Fi in F[1:]:
        delta_1 = delta_1 + Fi
    deltas = [delta_1] + [d.mul_tpoly(f1) for d in frag.deltas]
    bundle = SolutionBundle(frag.a * f1, b_poly, deltas)
    system = build_system(at, tup, R)
    printed = None
    if w % (q - 1) != 0:
        num = UniPoly.one(field, THETA).scale(field.sign((r - 1) * (1 + sum(N))))
        for i in range(n):
            if Np[i]:
                num = num * car.L(n + r - 2 - i) ** (Np[i] * q**i)
        den = UniPoly.one(field, THETA)
        for k in range(1, r):
            den = den * car.bracket(k) ** (pm * q ** (n + r - 2 - k))
        for i in range(n - 1):
            if N[i]:
                den = den * car.L(n - 1 - i) ** (N[i] * q**i)
        printed = RatFun(num, den)
    return system, bundle, printed


def _closed_form_t_part(at: ATContext, n: int, N) -> UniPoly:
    """sign * Gamma_{q^n - sum N q^i}|_t / prod L_{n-1-i}^(N_i q^i)|_t, exact."""
    field, q = at.field, at.q
    sign = field.sign(sum((n - 1 - i) * N[i] * q**i for i in range(n - 1)))
    out = at.gamma_at_t(q**n - sum(Ni * q**i for i, Ni in enumerate(N))).scale(sign)
    for i in range(n - 1):
        if N[i]:
            out = out.exact_div(at.L_at_t(n - 1 - i) ** (N[i] * q**i))
    return out


def build_solution_thm_q3(at: ATContext):
    """Full bundle for (1, q(q-1), q^3-q^2+q-1), q > 2, exactly as printed:

        a = (Gamma_{q^3} [3])|_t
        b = ([1]^(q-3) [2]^(q-2) (1-[3]))|_t
        delta_1 = C (t-theta)^(q^3) [(t-theta^q)(t-theta^(1/q))^(q^3)
                                     - theta^(q^2) + t + 1]
        delta_2 = -C (t-theta)^(q^3) (t-theta^(1/q))^(q^3) (t-theta^q)
        delta_3 = (Gamma_{q^3} [3] [2]^(q-2) / [1])|_t (t-theta)^(q^3) (t-theta^q)

    with C = (Gamma_{q^3} [2]^(q-2) [1]^(q-3))|_t.  Returns
    (system, bundle, printed_ratio) with the theorem's ratio
    ([3]-1)/([3][2][1]^(q^2-q+1)).
    """
    field, q = at.field, at.q
    if q == 2:
        raise QTooSmall("theorem requires q > 2")
    car = at.carlitz
    tup = (1, q * (q - 1), q**3 - q**2 + q - 1)
    w = q**3
    R = 3
    gamma_w = car.gamma(w)
    a_poly = (gamma_w * car.bracket(3)).rename(T)
    one = UniPoly.one(field, THETA)
    b_poly = (car.bracket(1) ** (q - 3) * car.bracket(2) ** (q - 2)
              * (one - car.bracket(3))).rename(T)
    C = (gamma_w * car.bracket(2) ** (q - 2) * car.bracket(1) ** (q - 3)).rename(T)
    tmt_w = TwistedPoly.theta_root_linear(field, R, 0) ** w
    t_m_th_q = _t_minus_theta_qpow(field, R, 1)
    root1_w = TwistedPoly.theta_root_linear(field, R, 1) ** w
    tail = TwistedPoly(field, R, {(1, 0): 1, (0, 0): 1,
                                  (0, q ** (R + 2)): field.minus_one})  # t + 1 - theta^(q^2)
    delta_1 = (tmt_w * (t_m_th_q * root1_w + tail)).mul_tpoly(C)
    delta_2 = -(tmt_w * root1_w * t_m_th_q).mul_tpoly(C)
    d3_coeff = (gamma_w * car.bracket(3) * car.bracket(2) ** (q - 2)) \
        .exact_div(car.bracket(1)).rename(T)
    delta_3 = (tmt_w * t_m_th_q).mul_tpoly(d3_coeff)
    bundle = SolutionBundle(a_poly, b_poly, [delta_1, delta_2, delta_3])
    system = build_system(at, tup, R)
    printed = RatFun(car.bracket(3) - one,
                     car.bracket(3) * car.bracket(2) * car.bracket(1) ** (q**2 - q + 1))
    return system, bundle, printed


# --- ratio extraction -------------------------------------------------------


def ratio_from_ab(car: CarlitzContext, a: UniPoly, b: UniPoly, tup) -> RatFun:
    """-b(theta) Gamma_w / (a(theta) Gamma_{s_1} ... Gamma_{s_r}), reduced.

    Only defined when (q-1) does not divide the weight (WeightEven otherwise)
    and a != 0 (DegenerateA otherwise).
    """
    tup = tuple(tup)
    w = sum(tup)
    q = car.q
    if w % (q - 1) == 0:
        raise WeightEven(f"(q-1) | w = {w}: the linear-relation display does not apply")
    if a.is_zero():
        raise DegenerateA("a = 0 carries no ratio")
    a_theta = a.rename(THETA)
    b_theta = b.rename(THETA)
    num = (-b_theta) * car.gamma(w)
    den = a_theta
    for s in tup:
        den = den * car.gamma(s)
    return RatFun(num, den)
