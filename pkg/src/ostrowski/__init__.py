"""Exact continued-fraction arithmetic and double exponential sum verification."""

from .alpha import (
    PHI,
    SQRT2,
    SQRT3,
    AlphaSpec,
    ContinuedFraction,
    ConvergentError,
    OstrowskiExpansion,
    SignedFrac,
    SurdValue,
    continued_fraction,
    convergent_error,
    convergents,
    eps_alpha_estimate,
    frac_exact,
    ostrowski_eval,
    ostrowski_expand,
    partial_quotients,
    signed_frac_scalar,
)
from .discrepancy import (
    DEFAULT_DISCREPANCY_BUDGET,
    DEFAULT_MIN_SCAN_BUDGET,
    DiscrepancyReport,
    KHReport,
    MinDistTracker,
    discrepancy_brute_rational,
    discrepancy_exact,
    harman_bound,
    kh_lemma_check,
)
from .errors import (
    BudgetExceeded,
    DegenerateDenominator,
    DegenerateModulus,
    DomainError,
    IndexOutOfRange,
    InsufficientPrecision,
    InsufficientQuotients,
    InvalidSurd,
    OstrowskiError,
    ParseError,
    PerfectSquareError,
    RangeExceeded,
)
from .report import (
    REPORT_HEADER,
    ReportRow,
    bound_report_rows,
    emit,
    emit_csv,
    emit_json,
    kh_report_row,
)
from .segments import (
    Segment,
    SegmentAnalysis,
    SegmentPlan,
    ck_values,
    exceptional_closed_forms,
    exceptional_indices,
    segment_plan,
    segment_sum,
)
from .sums import (
    FracCache,
    RecipSumReport,
    SumReport,
    cot_remainder,
    recip_sum,
    recip_sum_report,
    s2_via_cot,
    t_sum_closed,
    t_sum_naive,
)
from .verify import (
    DEFAULT_SUM_BUDGET,
    HL_CAP,
    LEMMA_OST_CAP,
    SINAI_CAP,
    STREAM_LIMIT,
    THEOREM_CAP,
    BoundReport,
    BoundRow,
    GrowthProbe,
    HLScanReport,
    LemmaOstReport,
    OuterTermReport,
    growth_probe,
    hardy_littlewood_scan,
    lemma_new_scan,
    lemma_ost_check,
    outer_term_check,
    sinai_ulcigrai_check,
    telescope_check,
    theorem_bound_check,
    theorem_envelope,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaSpec",
    "ContinuedFraction",
    "ConvergentError",
    "OstrowskiExpansion",
    "PHI",
    "SQRT2",
    "SQRT3",
    "SignedFrac",
    "SurdValue",
    "continued_fraction",
    "convergent_error",
    "convergents",
    "eps_alpha_estimate",
    "frac_exact",
    "ostrowski_eval",
    "ostrowski_expand",
    "partial_quotients",
    "signed_frac_scalar",
    "BudgetExceeded",
    "DegenerateDenominator",
    "DegenerateModulus",
    "DomainError",
    "IndexOutOfRange",
    "InsufficientPrecision",
    "InsufficientQuotients",
    "InvalidSurd",
    "OstrowskiError",
    "ParseError",
    "PerfectSquareError",
    "RangeExceeded",
    "DEFAULT_DISCREPANCY_BUDGET",
    "DEFAULT_MIN_SCAN_BUDGET",
    "DEFAULT_SUM_BUDGET",
    "STREAM_LIMIT",
    "THEOREM_CAP",
    "SINAI_CAP",
    "HL_CAP",
    "LEMMA_OST_CAP",
    "REPORT_HEADER",
    "DiscrepancyReport",
    "KHReport",
    "MinDistTracker",
    "discrepancy_brute_rational",
    "discrepancy_exact",
    "harman_bound",
    "kh_lemma_check",
    "ReportRow",
    "bound_report_rows",
    "emit",
    "emit_csv",
    "emit_json",
    "kh_report_row",
    "Segment",
    "SegmentAnalysis",
    "SegmentPlan",
    "ck_values",
    "exceptional_closed_forms",
    "exceptional_indices",
    "segment_plan",
    "segment_sum",
    "FracCache",
    "RecipSumReport",
    "SumReport",
    "cot_remainder",
    "recip_sum",
    "recip_sum_report",
    "s2_via_cot",
    "t_sum_closed",
    "t_sum_naive",
    "BoundReport",
    "BoundRow",
    "GrowthProbe",
    "HLScanReport",
    "LemmaOstReport",
    "OuterTermReport",
    "growth_probe",
    "hardy_littlewood_scan",
    "lemma_new_scan",
    "lemma_ost_check",
    "outer_term_check",
    "sinai_ulcigrai_check",
    "telescope_check",
    "theorem_bound_check",
    "theorem_envelope",
    "__version__",
]
