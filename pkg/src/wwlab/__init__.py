"""Numerical laboratory for double-recurrence phase-weighted ergodic averages.

Exactly computable measure-preserving systems, exact fixed-point polynomial
phases, FFT supremum scans over phase families, Gowers-type seminorm
estimators, the van der Corput inequality, and a reproducible Monte-Carlo
experiment harness.
"""

__version__ = "0.1.0"

from .averages import (
    AverageSeries,
    GridBudget,
    SupScan,
    WeightSequence,
    geometric_schedule,
    single_orbit_weights,
    sup_linear_fft,
    sup_poly_grid,
    twisted_average_trig,
    weight_sequence,
    ww_average,
)
from .errors import CatalogError, GridBudgetExceeded, InputError, UnsupportedError
from .fixedpoint import CirclePoint
from .observables import Observable, catalog_lookup, evaluate_along
from .phases import PolynomialPhase, TrigPolynomial, phase_value, scale_phase, trig_eval
from .seminorms import SeminormEstimate, UkNorm, ghk_estimate, seminorm_ladder, uk_norm
from .systems import (
    BitCursor,
    OrbitTable,
    StatePoint,
    SystemSpec,
    iterate,
    orbit,
    sample_initial_points,
)
from .vdc import VdcReport, difference_phase, h_difference, vdc_bound

__all__ = [
    "AverageSeries",
    "BitCursor",
    "CatalogError",
    "CirclePoint",
    "GridBudget",
    "GridBudgetExceeded",
    "InputError",
    "Observable",
    "OrbitTable",
    "PolynomialPhase",
    "SeminormEstimate",
    "StatePoint",
    "SupScan",
    "SystemSpec",
    "TrigPolynomial",
    "UkNorm",
    "UnsupportedError",
    "VdcReport",
    "WeightSequence",
    "catalog_lookup",
    "difference_phase",
    "evaluate_along",
    "geometric_schedule",
    "ghk_estimate",
    "h_difference",
    "iterate",
    "orbit",
    "phase_value",
    "sample_initial_points",
    "scale_phase",
    "seminorm_ladder",
    "single_orbit_weights",
    "sup_linear_fft",
    "sup_poly_grid",
    "trig_eval",
    "twisted_average_trig",
    "uk_norm",
    "vdc_bound",
    "weight_sequence",
    "ww_average",
]
