"""Site measures of amplitudes and descriptive classification of profiles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from .core import AmplitudeSegment, ComplexTriple
from .errors import WindowTooSmall

__all__ = [
    "phi",
    "phi_values",
    "MeasureProfile",
    "MeasureClassification",
    "measure_profile",
    "classify",
]

#: Default classification tolerance, relative to the profile mean.
CLASSIFY_TOL = 1e-9


def phi(triple: ComplexTriple) -> float:
    """Site measure of one amplitude: sum of squared moduli of its components."""
    return (
        abs(triple.left) ** 2 + abs(triple.loop) ** 2 + abs(triple.right) ** 2
    )


def phi_values(values: NDArray[np.complex128]) -> NDArray[np.float64]:
    """Vectorized site measure over an (n, 3) amplitude array."""
    return np.sum(np.abs(np.asarray(values)) ** 2, axis=1)


@dataclass(frozen=True, eq=False)
class MeasureProfile:
    """Non-negative measure values over a contiguous window."""

    x_min: int
    x_max: int
    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.float64)
        n = self.x_max - self.x_min + 1
        if vals.shape != (n,):
            raise ValueError(f"values must have shape ({n},), got {vals.shape}")
        if not np.all(np.isfinite(vals)) or np.any(vals < 0):
            raise ValueError("measure values must be finite and non-negative")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def n_sites(self) -> int:
        return self.x_max - self.x_min + 1

    def value(self, x: int) -> float:
        if not (self.x_min <= x <= self.x_max):
            raise IndexError(f"position {x} outside window [{self.x_min}, {self.x_max}]")
        return float(self.values[x - self.x_min])


def measure_profile(segment: AmplitudeSegment) -> MeasureProfile:
    """Pointwise site measure of a windowed amplitude."""
    return MeasureProfile(segment.x_min, segment.x_max, phi_values(segment.values))


@dataclass(frozen=True)
class MeasureClassification:
    """Descriptive shape of a measure profile on a window.

    ``kind`` is "uniform", "periodic" (with the smallest period >= 2 in
    ``period``), or "other". ``max_over_min_ratio`` is a growth diagnostic
    and is inf when the minimum is zero.
    """

    kind: str
    period: Optional[int]
    bounded_on_window: bool
    max_over_min_ratio: float


def classify(profile: MeasureProfile, tolerance: float = CLASSIFY_TOL) -> MeasureClassification:
    """Classify a profile as uniform, periodic, or other.

    ``tolerance`` is relative to the profile mean (any finite choice is a
    judgment call; the default suits profiles produced in double precision).
    Uniformity is checked first, then shift-invariance under each candidate
    period from 2 up to half the window, smallest first.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    vals = profile.values
    n = profile.n_sites
    if n < 4:
        raise WindowTooSmall(f"classification needs at least 4 sites, got {n}")
    mean = float(np.mean(vals))
    tol_abs = tolerance * mean if mean > 0 else tolerance
    vmax = float(np.max(vals))
    vmin = float(np.min(vals))
    ratio = vmax / vmin if vmin > 0 else float("inf")
    bounded = bool(np.all(np.isfinite(vals)))

    if float(np.max(np.abs(vals - mean))) <= tol_abs:
        return MeasureClassification("uniform", None, bounded, ratio)
    for p in range(2, n // 2 + 1):
        if float(np.max(np.abs(vals[p:] - vals[:-p]))) <= tol_abs:
            return MeasureClassification("periodic", p, bounded, ratio)
    return MeasureClassification("other", None, bounded, ratio)
