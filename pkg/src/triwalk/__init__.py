"""Stationary measures of one-dimensional three-state coined quantum walks.

The transfer engine (:mod:`triwalk.transfer`) builds stationary amplitudes
site by site from an eigenvalue on the unit circle and an admissible origin
amplitude; the step oracle (:mod:`triwalk.oracle`) validates every result
against a direct one-step evolution of the walk.
"""

from .core import (
    AmplitudeSegment,
    CoinDecomposition,
    CoinField,
    CoinMatrix,
    ComplexTriple,
    decompose,
    make_coin,
)
from .errors import (
    ConstraintViolated,
    NotUnitary,
    OverflowDetected,
    ParseError,
    SingularDenominator,
    ValidationError,
    WalkError,
    WindowTooSmall,
)
from .measure import MeasureClassification, MeasureProfile, classify, measure_profile, phi
from .models import (
    OMEGA,
    build_field,
    fourier_field,
    golden_measure,
    grover_defect_field,
    grover_field,
)
from .oracle import eigen_residual, stationarity_deviation, step
from .transfer import (
    OriginConstraint,
    TransferMatrix,
    origin_constraint,
    propagate,
    solve_initial_states,
    transfer_minus,
    transfer_plus,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeSegment",
    "CoinDecomposition",
    "CoinField",
    "CoinMatrix",
    "ComplexTriple",
    "ConstraintViolated",
    "MeasureClassification",
    "MeasureProfile",
    "NotUnitary",
    "OMEGA",
    "OriginConstraint",
    "OverflowDetected",
    "ParseError",
    "SingularDenominator",
    "TransferMatrix",
    "ValidationError",
    "WalkError",
    "WindowTooSmall",
    "build_field",
    "classify",
    "decompose",
    "eigen_residual",
    "fourier_field",
    "golden_measure",
    "grover_defect_field",
    "grover_field",
    "make_coin",
    "measure_profile",
    "origin_constraint",
    "phi",
    "propagate",
    "solve_initial_states",
    "stationarity_deviation",
    "step",
    "transfer_minus",
    "transfer_plus",
]
