"""End-to-end verification of the Eulerian/zeta-like identities.

Each verifier builds both sides of an identity independently (exact
enumeration or truncated series with explicit markers) and reports agreement.
Closed forms are transcribed exactly as displayed; when a printed form
disagrees numerically, the report carries the empirically matching
normalization next to status "failed-as-printed" instead of silently
correcting it.

Statuses: "verified" needs agreement over at least the requested number of
slots (default minimum 5); a smaller overlap is "inconclusive", a coefficient
mismatch "failed".  Reports are reproducible: no timing, deterministic
ordering.
"""

from __future__ import annotations

from .anderson_thakur import ATContext
from .carlitz import CarlitzContext
from .cpy import (build_solution_thm_a, build_solution_thm_b, build_solution_thm_q3,
                  check_solution, ratio_from_ab)
from .errors import EmptyOverlap, NonpositiveIndex, NotCharTwo, UnsupportedParams, WeightEven
from .polys import THETA, RatFun, UniPoly
from .power_sums import PowerSumContext
from .reports import (FAILED, FAILED_AS_PRINTED, INCONCLUSIVE, VERIFIED,
                      VerificationReport)
from .series import series_agree, series_from_ratfun


def _status_for(agree, precision: int) -> str:
    if not agree.equal:
        return FAILED
    return VERIFIED if agree.agreed_terms >= precision else INCONCLUSIVE


def _combine(statuses) -> str:
    if any(s == FAILED for s in statuses):
        return FAILED
    if any(s == FAILED_AS_PRINTED for s in statuses):
        return FAILED_AS_PRINTED
    if any(s == INCONCLUSIVE for s in statuses):
        return INCONCLUSIVE
    return VERIFIED


# --- power-sum lemma (exact) -------------------------------------------------


def verify_powersum_lemma(ps: PowerSumContext, n: int, d_max: int) -> VerificationReport:
    """S_d(q^n-1) S_d((q-1)q^n) = S_d(q^(n+1)-1) - S_d((q-1)q^n, q^n-1), d >= 1."""
    if d_max < 1:
        raise NonpositiveIndex("the lemma is stated for d >= 1")
    q = ps.q
    details = []
    ok = True
    for d in range(1, d_max + 1):
        lhs = ps.power_sum_exact(d, q**n - 1) * ps.power_sum_exact(d, (q - 1) * q**n)
        rhs = ps.power_sum_exact(d, q ** (n + 1) - 1) \
            - ps.power_sum_tuple_exact(d, ((q - 1) * q**n, q**n - 1))
        equal = lhs == rhs
        ok = ok and equal
        details.append({"d": d, "equal": equal})
    return VerificationReport("powersum-lemma", q, {"n": n, "dMax": d_max}, "exact",
                              VERIFIED if ok else FAILED, details=details)


# --- Carlitz-Euler evaluations (series) --------------------------------------


def verify_carlitz_euler(ps: PowerSumContext, precision: int = 12) -> VerificationReport:
    """Gamma_{n+1} zeta(n) vs BC(n) pi^~^n for n in {q-1, 2(q-1)}, and
    L_n zeta(q^n - 1) vs (-1)^n pi^~^(q^n - 1) for n <= 2."""
    car = ps.carlitz
    q = ps.q
    f = ps.field
    details = []
    statuses = []
    for n in (q - 1, 2 * (q - 1)):
        pi_deg = q * n // (q - 1)
        bc = car.bernoulli_carlitz(n)
        gamma = RatFun.from_poly(car.gamma(n + 1))
        top = pi_deg + (bc.num.degree - bc.den.degree) if not bc.is_zero() else 0
        low = top - precision - 2
        lhs = series_from_ratfun(gamma, low) * ps.zeta_to(n, low - gamma.num.degree)
        rhs = series_from_ratfun(bc, low - pi_deg) \
            * car.pi_power(n, low - (bc.num.degree - bc.den.degree))
        agree = series_agree(lhs, rhs)
        statuses.append(_status_for(agree, precision))
        details.append({"identity": "gamma*zeta=BC*pi^w", "n": n, **agree.to_json()})
    for n in (1, 2):
        w = q**n - 1
        pi_deg = q * w // (q - 1)
        ln = car.L(n)
        top = pi_deg
        low = top - precision - 2
        lhs = series_from_ratfun(RatFun.from_poly(ln), low) \
            * ps.zeta_to(w, low - ln.degree)
        rhs = car.pi_power(w, low).scale(f.sign(n))
        agree = series_agree(lhs, rhs)
        statuses.append(_status_for(agree, precision))
        details.append({"identity": "L_n*zeta(q^n-1)=(-1)^n*pi^(q^n-1)", "n": n,
                        **agree.to_json()})
    return VerificationReport("carlitz-euler", q, {"precision": precision}, "series",
                              _combine(statuses),
                              agreed_terms=min(d["agreedTerms"] for d in details),
                              details=details, min_agreed=precision)


# --- Theorem family A: zeta(q^n-1, (q-1)q^n, ..., (q-1)q^(n+r-2)) -------------


def _family_a_tuple(q: int, n: int, r: int) -> tuple[int, ...]:
    return (q**n - 1,) + tuple((q - 1) * q ** (n + i) for i in range(r - 1))


def _family_a_candidates(car: CarlitzContext, n: int, r: int):
    """(zeta-ratio candidate, Eulerian candidate) of the closed forms."""
    f = car.field
    q = car.q
    num = UniPoly.one(f, THETA)
    for k in range(n, n + r - 1):
        num = num * car.bracket(k)
    den = UniPoly.one(f, THETA)
    for k in range(1, r):
        den = den * car.bracket(k) ** (q ** (n + r - 1 - k))
    cand_z = RatFun(num, den)
    cand_e = RatFun(num.scale(f.sign(n + r - 1)), den * car.L(n + r - 1))
    return cand_z, cand_e


def verify_eulerian_family_A(ps: PowerSumContext, n: int, r: int,
                             precision: int) -> VerificationReport:
    """Recursion plus both closed forms for the (q^n-1, (q-1)q^n, ...) family."""
    if n < 1 or r < 2:
        raise UnsupportedParams("family A needs n >= 1, r >= 2")
    q = ps.q
    car = ps.carlitz
    main = _family_a_tuple(q, n, r)
    cand_z, cand_e = _family_a_candidates(car, n, r)
    wp = q ** (n + r - 1) - 1
    details = []
    statuses = []

    # (i) recursion: zeta(main) + zeta(shifted) = zeta(q^n-1) * zeta(base)^(q^n)
    top = (cand_e.num.degree - cand_e.den.degree) + q * wp // (q - 1)
    shifted = _family_a_tuple(q, n + 1, r - 1) if r > 2 else (q ** (n + 1) - 1,)
    base = _family_a_tuple(q, 1, r - 1) if r > 2 else (q - 1,)
    for slack in (1, 16, 64):
        low = top - precision + 1 - slack
        lhs = ps.multizeta_to(main, low)
        rhs = ps.multizeta_to(shifted, low)
        base_low = (low - 1) // q**n + 1
        powed = ps.multizeta_to(base, base_low).pow_frobenius(n)
        prod = ps.zeta_to(q**n - 1, low) * powed
        agree = series_agree(lhs + rhs, prod)
        if _status_for(agree, precision) != INCONCLUSIVE:
            break
    statuses.append(_status_for(agree, precision))
    details.append({"identity": "recursion", **agree.to_json()})

    # (ii) Eulerian closed form
    repE = ps.eulerian_check(main, cand_e, precision, family="family-A-eulerian")
    statuses.append(repE.status)
    details.append({"identity": "eulerian-form", "candidate": repr(cand_e),
                    **(repE.details[0] if repE.details else {})})

    # (iii) zeta-ratio closed form
    repZ = ps.ratio_check(main, cand_z, precision, family="family-A-ratio")
    statuses.append(repZ.status)
    details.append({"identity": "zeta-ratio-form", "candidate": repr(cand_z),
                    **(repZ.details[0] if repZ.details else {})})

    agreed = min(d.get("agreedTerms", 0) for d in details)
    return VerificationReport("mainthm-A", q, {"n": n, "r": r}, "series",
                              _combine(statuses), agreed_terms=agreed,
                              details=details, min_agreed=precision)


# --- Theorem family B (q = 2) -------------------------------------------------


def _family_b_pattern(car: CarlitzContext, r: int, printed: bool) -> UniPoly:
    """L_1^(e_1) ... L_{r-2}^(e_{r-2}): printed has e_i = 2^(r-i) for i <= r-3,
    the derived normalization e_i = 2^(r-1-i); both end with e_{r-2} = 2^2."""
    acc = UniPoly.one(car.field, THETA)
    for i in range(1, r - 1):
        if i <= r - 3:
            e = 2 ** (r - i) if printed else 2 ** (r - 1 - i)
        else:
            e = 4
        acc = acc * car.L(i) ** e
    return acc


def verify_eulerian_family_B(ps: PowerSumContext, r: int,
                             precision: int) -> VerificationReport:
    """q = 2: the zeta(1) zeta(1,2,...,2^(r-1)) recursion and the closed form
    for zeta(1,3,2^2,...,2^(r-1)), plus the proof's zeta(1,1,2,...,2^(r-2))
    input evaluation."""
    q = ps.q
    if q != 2:
        raise NotCharTwo("family B is a q = 2 statement")
    if r < 2:
        raise UnsupportedParams("family B needs r >= 2")
    car = ps.carlitz
    f = ps.field
    tuple_a = (1,) + tuple(2 ** (i - 1) for i in range(2, r + 1))
    tuple_c = (1, 3) + tuple(2**i for i in range(2, r))
    tuple_d = (1, 1) + tuple(2**i for i in range(1, r - 1))
    details = []
    statuses = []

    # recursion: zeta(1) zeta(tuple_a) = zeta(tuple_c) + zeta(tuple_d)^2
    w = 2**r
    for slack in (0, 16, 64):
        low = -(precision + 2 * w + slack)
        lhs = ps.zeta_to(1, low) * ps.multizeta_to(tuple_a, low)
        sq_low = (low - 1) // 2 + 1
        rhs = ps.multizeta_to(tuple_c, low) \
            + ps.multizeta_to(tuple_d, sq_low).pow_frobenius(1)
        agree = series_agree(lhs, rhs)
        if _status_for(agree, precision) != INCONCLUSIVE:
            break
    statuses.append(_status_for(agree, precision))
    details.append({"identity": "recursion", **agree.to_json()})

    # closed form for zeta(1,3,2^2,...): printed and, if needed, derived
    one = UniPoly.one(f, THETA)
    head = RatFun(car.bracket(r) - one, car.L(1) * car.bracket(r))
    cand_printed = head / RatFun.from_poly(_family_b_pattern(car, r, printed=True))
    repP = ps.eulerian_check(
        tuple_c, cand_printed / RatFun.from_poly(car.L(1) ** (2**r)), precision,
        family="family-B-closed")
    entry = {"identity": "closed-form-printed", "candidate": repr(cand_printed),
             **(repP.details[0] if repP.details else {})}
    if repP.status == VERIFIED:
        statuses.append(VERIFIED)
        details.append(entry)
    else:
        cand_derived = head / RatFun.from_poly(_family_b_pattern(car, r, printed=False))
        repD = ps.eulerian_check(
            tuple_c, cand_derived / RatFun.from_poly(car.L(1) ** (2**r)), precision,
            family="family-B-closed")
        entry["status"] = repP.status
        details.append(entry)
        details.append({"identity": "closed-form-matching-normalization",
                        "candidate": repr(cand_derived),
                        "matches": repD.status == VERIFIED,
                        **(repD.details[0] if repD.details else {})})
        statuses.append(FAILED_AS_PRINTED if repD.status == VERIFIED else FAILED)

    # zeta-ratio variant of the closed form, same adjudication
    repZ = ps.ratio_check(tuple_c,
                          head / RatFun.from_poly(_family_b_pattern(car, r, True)),
                          precision, family="family-B-ratio")
    if repZ.status == VERIFIED:
        statuses.append(VERIFIED)
        details.append({"identity": "zeta-ratio-form",
                        **(repZ.details[0] if repZ.details else {})})
    else:
        repZD = ps.ratio_check(tuple_c,
                               head / RatFun.from_poly(_family_b_pattern(car, r, False)),
                               precision, family="family-B-ratio")
        details.append({"identity": "zeta-ratio-form-printed", "status": repZ.status,
                        **(repZ.details[0] if repZ.details else {})})
        details.append({"identity": "zeta-ratio-form-matching-normalization",
                        "matches": repZD.status == VERIFIED,
                        **(repZD.details[0] if repZD.details else {})})
        statuses.append(FAILED_AS_PRINTED if repZD.status == VERIFIED else FAILED)

    # proof input: zeta(1,1,2,...,2^(r-2))
    den = car.L(1) ** (2 ** (r - 1))
    for k in range(1, r):
        den = den * car.bracket(k) ** (2 ** (r - 1 - k))
    repI = ps.eulerian_check(tuple_d, RatFun(one, den), precision,
                             family="family-B-input")
    statuses.append(repI.status)
    details.append({"identity": "input-zeta(1,1,2,...)",
                    **(repI.details[0] if repI.details else {})})

    agreed = min(d.get("agreedTerms", 0) for d in details if "agreedTerms" in d)
    return VerificationReport("mainthm-B", q, {"r": r}, "series",
                              _combine(statuses), agreed_terms=agreed,
                              details=details, min_agreed=precision)


# --- CPY-backed families -----------------------------------------------------


def verify_thm_a(at: ATContext, ps: PowerSumContext, n: int,
                 precision: int) -> VerificationReport:
    """Exact CPY check plus the series ratio for (1, q^2-1, ..., (q-1)q^(n+1))."""
    system, bundle = build_solution_thm_a(at, n)
    rep = check_solution(system, bundle)
    details = [{"identity": "cpy-system", "satisfied": rep.satisfied,
                "degenerate": rep.degenerate,
                "failingEquation": rep.failing_equation}]
    statuses = [VERIFIED if rep.satisfied and not rep.degenerate else FAILED]
    ratio = ratio_from_ab(at.carlitz, bundle.a, bundle.b, system.tuple)
    repR = ps.ratio_check(system.tuple, ratio, precision, family="thmA-ratio")
    statuses.append(repR.status)
    details.append({"identity": "ratio-from-bundle", "candidate": repr(ratio),
                    **(repR.details[0] if repR.details else {})})
    return VerificationReport("mainthm3-a", ps.q, {"n": n, "tuple": list(system.tuple)},
                              "series", _combine(statuses),
                              agreed_terms=repR.agreed_terms, details=details,
                              min_agreed=precision)


def verify_thm_b(at: ATContext, ps: PowerSumContext, n: int, N, pm: int, r: int,
                 precision: int) -> VerificationReport:
    """Exact CPY check for the (q^n - sum N_i q^i, pm(q-1)q^(n-1), ...) family;
    ratio checks where (q-1) does not divide the weight, otherwise the system
    check stands alone ("system-verified, ratio unverified")."""
    system, bundle, printed = build_solution_thm_b(at, n, N, pm, r)
    rep = check_solution(system, bundle)
    details = [{"identity": "cpy-system", "satisfied": rep.satisfied,
                "degenerate": rep.degenerate,
                "failingEquation": rep.failing_equation}]
    statuses = [VERIFIED if rep.satisfied and not rep.degenerate else FAILED]
    agreed = None
    if printed is not None:
        extracted = ratio_from_ab(at.carlitz, bundle.a, bundle.b, system.tuple)
        details.append({"identity": "printed-vs-extracted",
                        "equal": extracted == printed, "printed": repr(printed)})
        statuses.append(VERIFIED if extracted == printed else FAILED)
        repR = ps.ratio_check(system.tuple, printed, precision, family="thmB-ratio")
        statuses.append(repR.status)
        agreed = repR.agreed_terms
        details.append({"identity": "ratio-series",
                        **(repR.details[0] if repR.details else {})})
    else:
        # (q-1) | w: no linear-relation display; cross-check the Eulerian
        # normalization through the family-A closed form when the tuple has
        # that shape, otherwise leave the system check standing alone.
        crossed = False
        s1 = system.tuple[0]
        na = 0
        while ps.q**na - 1 < s1:
            na += 1
        if s1 == ps.q**na - 1 and system.tuple == _family_a_tuple(ps.q, na, r):
            cand_z, _ = _family_a_candidates(at.carlitz, na, r)
            repR = ps.ratio_check(system.tuple, cand_z, precision,
                                  family="thmB-crosscheck")
            statuses.append(repR.status)
            agreed = repR.agreed_terms
            details.append({"identity": "family-A-crosscheck",
                            "candidate": repr(cand_z),
                            **(repR.details[0] if repR.details else {})})
            crossed = True
        if not crossed:
            details.append({"identity": "ratio", "note": "system-verified, ratio "
                            "unverified ((q-1) divides the weight)"})
    return VerificationReport("mainthm3-b", ps.q,
                              {"n": n, "N": list(N), "pm": pm, "r": r,
                               "tuple": list(system.tuple)},
                              "series" if printed is not None else "exact",
                              _combine(statuses), agreed_terms=agreed,
                              details=details, min_agreed=precision)


def verify_thm_q3(at: ATContext, ps: PowerSumContext,
                  precision: int) -> VerificationReport:
    """(1, q(q-1), q^3-q^2+q-1): exact system check plus the bracket-exponent
    adjudication between the theorem's [1]^(q^2-q+1) and the conjecture's
    [1]^(q^2-q-1)."""
    q = ps.q
    car = at.carlitz
    system, bundle, printed = build_solution_thm_q3(at)
    rep = check_solution(system, bundle)
    details = [{"identity": "cpy-system", "satisfied": rep.satisfied,
                "degenerate": rep.degenerate,
                "failingEquation": rep.failing_equation}]
    statuses = [VERIFIED if rep.satisfied and not rep.degenerate else FAILED]
    extracted = ratio_from_ab(car, bundle.a, bundle.b, system.tuple)
    details.append({"identity": "printed-vs-extracted",
                    "equal": extracted == printed})
    statuses.append(VERIFIED if extracted == printed else FAILED)
    one = UniPoly.one(ps.field, THETA)
    matching = []
    agreed = None
    for e, source in ((q * q - q + 1, "theorem"), (q * q - q - 1, "conjecture")):
        cand = RatFun(car.bracket(3) - one,
                      car.bracket(3) * car.bracket(2) * car.bracket(1) ** e)
        repR = ps.ratio_check(system.tuple, cand, precision, family="thmq3-ratio")
        detail = {"identity": "exponent-adjudication", "source": source,
                  "exponent": e, "status": repR.status,
                  **(repR.details[0] if repR.details else {})}
        details.append(detail)
        if repR.status == VERIFIED:
            matching.append(e)
            agreed = repR.agreed_terms
    details.append({"identity": "matching-exponent", "exponents": matching})
    statuses.append(VERIFIED if matching == [q * q - q + 1] else FAILED)
    return VerificationReport("mainthm4", q, {"tuple": list(system.tuple)}, "series",
                              _combine(statuses), agreed_terms=agreed,
                              details=details, min_agreed=precision)


# --- conjecture dispatch -------------------------------------------------------


def verify_family(at: ATContext, ps: PowerSumContext, family_id: str, params: dict,
                  precision: int) -> VerificationReport:
    """Dispatch a conjecture family to the theorem that proves it."""
    q = ps.q
    if family_id == "conj27a":
        return verify_eulerian_family_A(ps, params["n"], params["r"], precision)
    if family_id == "conj27b":
        if q == 2:
            return verify_eulerian_family_B(ps, params["n"] + 2, precision)
        return verify_thm_a(at, ps, params["n"], precision)
    if family_id == "conj27c":
        n = params["n"]
        r = params["r"]
        if q == 2:
            raise UnsupportedParams("conj27c requires q > 2")
        N = [2] if n == 0 else [1] + [0] * (n - 1) + [1]
        return verify_thm_b(at, ps, n + 1, N, q, r, precision)
    if family_id == "conj29a":
        return verify_thm_b(at, ps, params["n"], params["N"], params["pm"],
                            params["r"], precision)
    if family_id == "conj29b":
        return verify_thm_q3(at, ps, precision)
    raise UnsupportedParams(f"unknown family {family_id!r}")


# --- the paper suite -----------------------------------------------------------


def suite_paper(at: ATContext, ps: PowerSumContext,
                precision: int | None = None) -> list[VerificationReport]:
    """The per-q verification matrix run by `verify --suite paper`."""
    q = ps.q
    reports = []
    if q == 2:
        prec = precision or 10
        reports.append(verify_powersum_lemma(ps, 1, 3))
        reports.append(verify_powersum_lemma(ps, 2, 3))
        reports.append(verify_carlitz_euler(ps, max(12, prec)))
        for (n, r) in ((1, 2), (1, 3), (2, 2)):
            reports.append(verify_eulerian_family_A(ps, n, r, prec))
        for r in (2, 3):
            reports.append(verify_eulerian_family_B(ps, r, max(8, prec - 2)))
    elif q == 3:
        prec = precision or 6
        reports.append(verify_powersum_lemma(ps, 1, 3))
        reports.append(verify_powersum_lemma(ps, 2, 3))
        reports.append(verify_carlitz_euler(ps, 12))
        for (n, r) in ((1, 2), (1, 3)):
            reports.append(verify_eulerian_family_A(ps, n, r, prec))
        for n in (0, 1):
            reports.append(verify_thm_a(at, ps, n, prec))
        reports.append(verify_thm_b(at, ps, 1, [2], 3, 2, prec))
        reports.append(verify_thm_b(at, ps, 1, [1], 3, 2, prec))
        reports.append(verify_thm_q3(at, ps, max(5, prec - 1)))
    else:
        prec = precision or 5
        reports.append(verify_powersum_lemma(ps, 1, 2))
        if q > 2:
            reports.append(verify_thm_q3(at, ps, prec))
    return reports
