"""Built-in coin fields and closed-form reference measures.

Three canonical models: the homogeneous Grover walk, the Grover walk with a
single phase defect at the origin, and the homogeneous Fourier walk. The
constants (omega, 1/sqrt(3)) are computed from their definitions at full
double precision, never typed as decimal literals.
"""

from __future__ import annotations

import numpy as np

from .core import CoinField, CoinMatrix

__all__ = [
    "OMEGA",
    "MODEL_NAMES",
    "grover_coin",
    "grover_field",
    "grover_defect_field",
    "fourier_coin",
    "fourier_field",
    "build_field",
    "golden_measure",
]

#: Primitive cube root of unity used by the Fourier coin.
OMEGA = np.exp(2j * np.pi / 3)

#: CLI vocabulary of built-in models.
MODEL_NAMES = ("grover", "grover-defect", "fourier")


def grover_coin() -> CoinMatrix:
    """The 3x3 Grover coin: diagonal -1/3, off-diagonal 2/3."""
    return CoinMatrix((2.0 * np.ones((3, 3)) - 3.0 * np.eye(3)) / 3.0)


def grover_field() -> CoinField:
    """Homogeneous field with the Grover coin everywhere."""
    return CoinField(grover_coin())


def grover_defect_field(phase: float) -> CoinField:
    """Grover field with the origin coin multiplied by exp(i * phase).

    A unit-modulus weight keeps the override unitary for any phase.
    """
    rho = np.exp(1j * float(phase))
    defect = CoinMatrix(rho * grover_coin().matrix)
    return CoinField(grover_coin(), {0: defect})


def fourier_coin() -> CoinMatrix:
    """The normalized 3x3 discrete Fourier coin."""
    w = OMEGA
    mat = np.array(
        [[1, 1, 1], [1, w, w * w], [1, w * w, w]], dtype=np.complex128
    ) / np.sqrt(3.0)
    return CoinMatrix(mat)


def fourier_field() -> CoinField:
    """Homogeneous field with the Fourier coin everywhere."""
    return CoinField(fourier_coin())


def build_field(name: str, phase: float = np.pi) -> CoinField:
    """Field for a built-in model name; ``phase`` applies to grover-defect only."""
    if name == "grover":
        return grover_field()
    if name == "grover-defect":
        return grover_defect_field(phase)
    if name == "fourier":
        return fourier_field()
    raise ValueError(f"unknown model {name!r}; choose one of {MODEL_NAMES}")


def golden_measure(model: str, alpha: complex, x: int) -> float:
    """Closed-form reference measure value for a built-in model at site ``x``.

    Models: "grover" (uniform 2|alpha|^2), "grover_defect_rho_minus1"
    (2|alpha|^2, tripled at |x| = 1), "fourier" (2|alpha|^2 at multiples of
    3, else 5|alpha|^2).

    Caution: for the defect model this table is trustworthy only at
    |x| <= 1. Direct propagation, certified site by site by the step
    oracle, gives 6|alpha|^2 at every nonzero site, not just at |x| = 1;
    see the test suite for the oracle-backed profile.
    """
    a2 = abs(alpha) ** 2
    if model == "grover":
        return 2.0 * a2
    if model == "grover_defect_rho_minus1":
        return 2.0 * a2 * (3.0 if abs(x) == 1 else 1.0)
    if model == "fourier":
        return a2 * (2.0 if x % 3 == 0 else 5.0)
    raise ValueError(f"unknown model {model!r}")
