"""Differential spectrum of the Ness-Helleseth binomial over GF(3^n).

Three independent routes to the same numbers, cross-checked exactly:
brute-force DDT accumulation, the per-pair solution census, and the
closed form in two character sums.
"""

from .solution_census import (
    CaseOutcome,
    SolutionCensus,
    case_solutions,
    census,
    predict_solution_count,
    special_point_solutions,
    verify_predictions,
)
from .charsums import (
    IdentityReport,
    char_sum,
    g_eval,
    g_product_sum,
    in_theorem_scope,
    quadratic_char_sum,
    section2_identities,
    set_a_points,
    table_a_chi,
)
from .field import FieldCtx, InconsistencyError, ReducibleModulusError, make_context
from .ness import (
    NHParams,
    Spectrum,
    ddt_entry,
    derivative,
    differential_uniformity,
    f_eval,
    spectrum_bruteforce,
)
from .rng import SplitMix64, sample_u0_nonf3
from .spectrum import (
    ClosedFormInputs,
    UClass,
    classify_u,
    closed_form_inputs,
    epsilon,
    gamma3,
    gamma4,
    spectrum_closed_form,
    u0_nonf3_elements,
    verify_theorem_record,
)

__version__ = "0.1.0"

__all__ = [
    "CaseOutcome",
    "ClosedFormInputs",
    "FieldCtx",
    "IdentityReport",
    "InconsistencyError",
    "NHParams",
    "ReducibleModulusError",
    "SolutionCensus",
    "Spectrum",
    "SplitMix64",
    "UClass",
    "case_solutions",
    "census",
    "char_sum",
    "classify_u",
    "closed_form_inputs",
    "ddt_entry",
    "derivative",
    "differential_uniformity",
    "epsilon",
    "f_eval",
    "g_eval",
    "g_product_sum",
    "gamma3",
    "gamma4",
    "in_theorem_scope",
    "make_context",
    "predict_solution_count",
    "quadratic_char_sum",
    "sample_u0_nonf3",
    "section2_identities",
    "set_a_points",
    "special_point_solutions",
    "spectrum_bruteforce",
    "spectrum_closed_form",
    "table_a_chi",
    "u0_nonf3_elements",
    "verify_predictions",
    "verify_theorem_record",
]
