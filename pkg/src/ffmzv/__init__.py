"""ffmzv: exact function-field arithmetic for Anderson-Thakur polynomials,
Carlitz multizeta values, and twisted-equation zeta-likeness checks."""

from .anderson_thakur import (ATContext, ATPolynomial, lucas_multinomial,
                              reduce_vector, weighted_partitions)
from .bipoly import BiPoly
from .carlitz import CarlitzContext
from .cpy import (DeltaSystem, SolutionBundle, build_solution_thm_a,
                  build_solution_thm_b, build_solution_thm_q3,
                  build_subsystem_family, build_system, check_solution,
                  ratio_from_ab)
from .fields import Fq, FqElement, field_create, field_from_q
from .polys import RatFun, UniPoly, poly_gcd, ratfun_make, subst_theta_to_t
from .power_sums import PowerSumContext, ZetaRequest, tail_valuation
from .series import AgreementReport, LaurentSeries, series_agree, series_from_ratfun
from .twist import TwistedPoly, twist_down, twist_up
from .verify import (suite_paper, verify_carlitz_euler, verify_eulerian_family_A,
                     verify_eulerian_family_B, verify_family, verify_powersum_lemma)

__version__ = "0.1.0"

__all__ = [
    "ATContext", "ATPolynomial", "AgreementReport", "BiPoly", "CarlitzContext",
    "DeltaSystem", "Fq", "FqElement", "LaurentSeries", "PowerSumContext", "RatFun",
    "SolutionBundle", "TwistedPoly", "UniPoly", "ZetaRequest",
    "build_solution_thm_a", "build_solution_thm_b", "build_solution_thm_q3",
    "build_subsystem_family", "build_system", "check_solution", "field_create",
    "field_from_q", "lucas_multinomial", "poly_gcd", "ratfun_make", "ratio_from_ab",
    "reduce_vector", "series_agree", "series_from_ratfun", "subst_theta_to_t",
    "suite_paper", "tail_valuation", "twist_down", "twist_up",
    "verify_carlitz_euler", "verify_eulerian_family_A", "verify_eulerian_family_B",
    "verify_family", "verify_powersum_lemma", "weighted_partitions",
]
