"""Command-line entry point.

Subcommands: basics, hn, zeta, cpy, verify.  All output goes to stdout as
JSON (sorted keys, no timing fields) unless --format text/csv; every report
embeds the run configuration so results are reproducible from the output
alone.  Exit codes: 0 success/verified, 1 failed identity, 2 usage error,
3 enumeration budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .anderson_thakur import ATContext
from .carlitz import CarlitzContext
from .cpy import (SolutionBundle, build_solution_thm_a, build_solution_thm_b,
                  build_solution_thm_q3, build_subsystem_family, build_system,
                  check_solution, ratio_from_ab)
from .errors import BudgetExceeded, FfmzvError, WeightEven
from .fields import Fq, field_create, field_from_q
from .power_sums import PowerSumContext, ZetaRequest, default_budget
from .reports import VERIFIED
from .verify import suite_paper, verify_family

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass
class RunConfig:
    field: Fq
    precision: int
    budget: int
    out_format: str
    seed: int

    def to_json(self) -> dict:
        return {"field": self.field.describe(), "precision": self.precision,
                "budget": self.budget, "format": self.out_format, "seed": self.seed}


def _add_common(sub: argparse.ArgumentParser):
    sub.add_argument("--q", type=int, help="field size (prime power, default modulus)")
    sub.add_argument("--p", type=int, help="characteristic (with --m)")
    sub.add_argument("--m", type=int, default=1, help="extension degree")
    sub.add_argument("--modulus", type=str,
                     help="comma-separated F_p coefficients c0,...,cm of the modulus")
    sub.add_argument("--prec", type=int, default=8, help="target exact slots / agreed terms")
    sub.add_argument("--budget", type=int, help="max monic enumeration count")
    sub.add_argument("--format", dest="out_format", choices=("json", "text", "csv"),
                     default="json")
    sub.add_argument("--out", type=str, help="also write the JSON report to this file")
    sub.add_argument("--seed", type=int, default=0,
                     help="seed recorded for randomized sweeps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffmzv",
        description="Exact Anderson-Thakur / Carlitz multizeta computations over F_q[theta]. "
                    "Default enumeration budgets: q=2: d<=20, q=3: d<=10, else d<=6 "
                    "(override with --budget or FFMZV_BUDGET).")
    subs = parser.add_subparsers(dest="command", required=True)

    b = subs.add_parser("basics", help="brackets [n], D_n, L_n, Gamma_k, BC(n)")
    _add_common(b)
    b.add_argument("--n", type=str, default="", help="indices for [n], D_n, L_n")
    b.add_argument("--gamma", type=str, default="", help="subscripts k for Gamma_k")
    b.add_argument("--bc", type=str, default="", help="indices n for BC(n)")

    h = subs.add_parser("hn", help="Anderson-Thakur polynomials")
    _add_common(h)
    h.add_argument("--n", type=int, help="index of H_n")
    h.add_argument("--oracle", action="store_true",
                   help="also run the partition oracle and compare")
    h.add_argument("--closed-form", type=str,
                   help="n,N0,N1,... for the q^n - sum N_i q^i - 1 closed form")

    z = subs.add_parser("zeta", help="truncated zeta / multizeta values")
    _add_common(z)
    z.add_argument("--tuple", type=str, required=True, help="s1,s2,...")
    z.add_argument("--exact-powersum", type=str,
                   help="d,s: also emit the exact power sum S_d(s)")

    c = subs.add_parser("cpy", help="delta-equation systems and explicit solutions")
    _add_common(c)
    c.add_argument("--family", choices=("propA", "thmA", "thmB", "thmQ3"))
    c.add_argument("--params", type=str, default="",
                   help="k=v,... (N as colon list, e.g. N=2:0:1)")
    c.add_argument("--tuple", type=str, help="tuple for --bundle checks")
    c.add_argument("--bundle", type=str, help="JSON file with a candidate bundle")
    c.add_argument("--check-only", action="store_true",
                   help="suppress ratio extraction")

    v = subs.add_parser("verify", help="identity verification reports")
    _add_common(v)
    v.add_argument("--family", type=str,
                   help="conj27a|conj27b|conj27c|conj29a|conj29b")
    v.add_argument("--params", type=str, default="", help="k=v,...")
    v.add_argument("--suite", choices=("paper",), help="run the full matrix")
    return parser


def _parse_ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip() != ""]


def _parse_params(text: str) -> dict:
    out = {}
    for part in text.split(","):
        if not part.strip():
            continue
        k, _, v = part.partition("=")
        k = k.strip()
        v = v.strip()
        if ":" in v:
            out[k] = [int(x) for x in v.split(":")]
        else:
            out[k] = int(v)
    return out


def _make_field(args) -> Fq:
    if args.q is not None:
        return field_from_q(args.q)
    if args.p is not None:
        modulus = None
        if args.modulus:
            modulus = tuple(_parse_ints(args.modulus))
        return field_create(args.p, args.m, modulus)
    raise FfmzvError("specify the field with --q or --p/--m")


def _emit(payload: dict, args, config: RunConfig) -> None:
    payload = {"config": config.to_json(), **payload}
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if args.out_format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif args.out_format == "csv":
        _emit_csv(payload)
    else:
        _emit_text(payload)


def _emit_csv(payload: dict) -> None:
    reports = payload.get("reports", [payload.get("report")])
    print("family,q,params,status,agreedTerms")
    for rep in reports:
        if rep is None:
            continue
        params = ";".join(f"{k}={v}" for k, v in sorted(rep.get("params", {}).items()))
        print(f"{rep.get('family')},{rep.get('q')},{params},"
              f"{rep.get('status')},{rep.get('agreedTerms')}")


def _emit_text(payload: dict) -> None:
    def walk(obj, indent=0):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k in sorted(obj):
                v = obj[k]
                if isinstance(v, (dict, list)):
                    print(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    print(f"{pad}{k}: {v}")
        elif isinstance(obj, list):
            for v in obj:
                walk(v, indent)
                if isinstance(v, (dict, list)):
                    print(f"{pad}-")
        else:
            print(f"{pad}{obj}")
    walk(payload)


def _cmd_basics(args, config: RunConfig, car: CarlitzContext) -> int:
    out: dict = {"brackets": {}, "D": {}, "L": {}, "gamma": {}, "bc": {}}
    for n in _parse_ints(args.n):
        b = car.bracket(n) if n >= 1 else None
        out["brackets"][str(n)] = b.to_json() if b is not None else None
        out["D"][str(n)] = car.D(n).to_json()
        out["L"][str(n)] = car.L(n).to_json()
    for k in _parse_ints(args.gamma):
        out["gamma"][str(k)] = car.gamma(k).to_json()
    for n in _parse_ints(args.bc):
        out["bc"][str(n)] = car.bernoulli_carlitz(n).to_json()
    out["tag"] = "exact"
    _emit(out, args, config)
    return EXIT_OK


def _cmd_hn(args, config: RunConfig, car: CarlitzContext) -> int:
    at = ATContext(car)
    out: dict = {"tag": "exact"}
    exit_code = EXIT_OK
    if args.n is not None:
        ap = at.at_poly(args.n)
        out["n"] = args.n
        out["H"] = ap.value.to_json()
        out["H_text"] = ap.value.text()
        out["gammaAtT"] = ap.gamma_at_t.to_json()
        if args.oracle:
            same = at.at_poly_oracle(args.n).value == ap.value
            out["oracleAgrees"] = same
            if not same:
                exit_code = EXIT_FAILED
    if args.closed_form:
        vals = _parse_ints(args.closed_form)
        n, N = vals[0], vals[1:]
        cf = at.at_closed_form(n, N)
        same = cf.value == at.at_poly(cf.n).value
        out["closedForm"] = {"n": n, "N": N, "index": cf.n,
                             "H": cf.value.to_json(), "matchesRecurrence": same}
        if not same:
            exit_code = EXIT_FAILED
    _emit(out, args, config)
    return exit_code


def _cmd_zeta(args, config: RunConfig, car: CarlitzContext) -> int:
    ps = PowerSumContext(car, budget=config.budget)
    tup = tuple(_parse_ints(args.tuple))
    request = ZetaRequest(tup, config.precision)
    series = ps.multizeta(request)
    out = {"tuple": list(tup), "weight": sum(tup),
           "precision_achieved": -series.low_known + 1,
           "series": series.to_json(), "series_text": series.text(),
           "status": "ok", "tag": f"series to O(th^{series.low_known - 1})"}
    if args.exact_powersum:
        d, s = _parse_ints(args.exact_powersum)
        out["exactPowerSum"] = {"d": d, "s": s,
                                "value": ps.power_sum_exact(d, s).to_json()}
    _emit(out, args, config)
    return EXIT_OK


def _cmd_cpy(args, config: RunConfig, car: CarlitzContext) -> int:
    at = ATContext(car)
    ps = PowerSumContext(car, budget=config.budget)
    params = _parse_params(args.params)
    out: dict = {}
    if args.bundle:
        with open(args.bundle) as fh:
            data = json.load(fh)
        bundle = SolutionBundle.from_json(car.field, data)
        tup = tuple(_parse_ints(args.tuple))
        system = build_system(at, tup, bundle.root_depth)
        printed = None
    elif args.family == "propA":
        system, bundle, _ = build_subsystem_family(
            at, params.get("pM", 1), params.get("m", 0), params["r"],
            params.get("j", 2))
        printed = None
    elif args.family == "thmA":
        system, bundle = build_solution_thm_a(at, params["n"])
        printed = None
    elif args.family == "thmB":
        N = params["N"]
        if isinstance(N, int):
            N = [N]
        system, bundle, printed = build_solution_thm_b(
            at, params["n"], N, params["pm"], params["r"])
    elif args.family == "thmQ3":
        system, bundle, printed = build_solution_thm_q3(at)
    else:
        raise FfmzvError("cpy needs --family or --bundle with --tuple")
    report = check_solution(system, bundle)
    out["system"] = system.describe()
    out["check"] = report.to_json()
    out["tag"] = "exact"
    if not args.check_only and report.satisfied and not report.degenerate:
        if bundle.b is not None:
            try:
                ratio = ratio_from_ab(car, bundle.a, bundle.b, system.tuple)
                out["ratio"] = ratio.to_json()
                rep = ps.ratio_check(system.tuple, ratio, config.precision)
                out["ratioSeriesCheck"] = rep.to_json()
            except WeightEven:
                out["ratio"] = None
        if printed is not None:
            out["printedRatio"] = printed.to_json()
    _emit(out, args, config)
    return EXIT_OK if report.satisfied else EXIT_FAILED


def _cmd_verify(args, config: RunConfig, car: CarlitzContext) -> int:
    at = ATContext(car)
    ps = PowerSumContext(car, budget=config.budget)
    if args.suite == "paper":
        reports = suite_paper(at, ps, precision=None)
    elif args.family:
        reports = [verify_family(at, ps, args.family, _parse_params(args.params),
                                 config.precision)]
    else:
        raise FfmzvError("verify needs --family or --suite")
    payload = {"reports": [r.to_json() for r in reports],
               "allVerified": all(r.status == VERIFIED for r in reports)}
    _emit(payload, args, config)
    return EXIT_OK if payload["allVerified"] else EXIT_FAILED


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        field = _make_field(args)
        budget = args.budget
        if budget is None and os.environ.get("FFMZV_BUDGET"):
            budget = int(os.environ["FFMZV_BUDGET"])
        if budget is None:
            budget = default_budget(field.q)
        config = RunConfig(field, args.prec, budget, args.out_format, args.seed)
        car = CarlitzContext(field)
        handler = {"basics": _cmd_basics, "hn": _cmd_hn, "zeta": _cmd_zeta,
                   "cpy": _cmd_cpy, "verify": _cmd_verify}[args.command]
        return handler(args, config, car)
    except BudgetExceeded as exc:
        print(json.dumps({"error": "BudgetExceeded", "message": str(exc)},
                         sort_keys=True))
        return EXIT_BUDGET
    except FfmzvError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)},
                         sort_keys=True))
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
