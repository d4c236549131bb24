"""Exact heat-trace coefficient computation for locally symmetric spaces.

The package computes, in exact rational arithmetic, the normalized heat-trace
coefficient sequences of the compact rank-one symmetric space families and of
the noncompact families whose spherical Plancherel density is polynomial; it
provides the series algebra (Cauchy product, metric rescaling, compact/
noncompact dualization), factorial growth-law diagnostics, and an independent
spectral-summation oracle used to validate the closed forms.
"""

from .errors import (
    BelowThresholdError,
    DegenerateModelError,
    HeatTraceError,
    IllConditionedFitError,
    InvariantViolation,
    NotPositiveDefiniteError,
    SafetyLimitError,
    UnsupportedSpaceError,
)
from .exactnum import bernoulli, c_coeff, d_coeff, gauss_moment, log_abs
from .seedpolys import SignedTable, beta_table, delta_table, eta_table, gamma_table
from .series import HeatSeries, dualize, product, rescale
from .rank1 import (
    ScaledRational,
    SpaceModel,
    cp_an,
    even_sphere_an,
    hp_an,
    op2_an,
    rank1_series,
    volume,
)
from .plancherel import (
    ExpPolyForm,
    PlancherelModel,
    build_family,
    closed_form,
    diagonalize_form,
    load_model_file,
    to_series,
)
from .growth import (
    GrowthReport,
    classify,
    equiv_check,
    estimate_growth_constant,
    factorial_bound_witness,
    growth_report,
)
from .oracle import SpectrumLine, fit_coefficients, heat_trace, sphere_spectrum, sphere_volume

__version__ = "0.1.0"

__all__ = [
    "BelowThresholdError",
    "DegenerateModelError",
    "ExpPolyForm",
    "GrowthReport",
    "HeatSeries",
    "HeatTraceError",
    "IllConditionedFitError",
    "InvariantViolation",
    "NotPositiveDefiniteError",
    "PlancherelModel",
    "SafetyLimitError",
    "ScaledRational",
    "SignedTable",
    "SpaceModel",
    "SpectrumLine",
    "UnsupportedSpaceError",
    "bernoulli",
    "beta_table",
    "build_family",
    "c_coeff",
    "classify",
    "closed_form",
    "cp_an",
    "d_coeff",
    "delta_table",
    "diagonalize_form",
    "dualize",
    "equiv_check",
    "estimate_growth_constant",
    "eta_table",
    "even_sphere_an",
    "factorial_bound_witness",
    "fit_coefficients",
    "gamma_table",
    "gauss_moment",
    "growth_report",
    "heat_trace",
    "hp_an",
    "load_model_file",
    "log_abs",
    "op2_an",
    "product",
    "rank1_series",
    "rescale",
    "sphere_spectrum",
    "sphere_volume",
    "to_series",
    "volume",
]
