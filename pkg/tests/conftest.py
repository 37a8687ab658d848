"""Shared fixtures: closed-form reference matrices and randomized coin fields."""

import numpy as np
import pytest

import triwalk as tw
from triwalk.models import OMEGA

# Closed-form transfer matrices for the homogeneous Grover walk at lambda = -1.
GROVER_TPLUS = np.array(
    [[1, 0, 0], [-1 / 3, 2 / 3, -1 / 3], [-2 / 3, -2 / 3, 1 / 3]], dtype=complex
)
GROVER_TMINUS = np.array(
    [[1 / 3, -2 / 3, -2 / 3], [-1 / 3, 2 / 3, -1 / 3], [0, 0, 1]], dtype=complex
)

# Defect-adjacent transfer matrices (phase pi defect at the origin, lambda = -1).
DEFECT_TPLUS_1 = np.array(
    [[1, 0, 0], [-5 / 3, -2 / 3, 1 / 3], [2 / 3, 2 / 3, -1 / 3]], dtype=complex
)
DEFECT_TMINUS_M1 = np.array(
    [[-1 / 3, 2 / 3, 2 / 3], [1 / 3, -2 / 3, -5 / 3], [0, 0, 1]], dtype=complex
)

# Closed-form transfer matrices for the homogeneous Fourier walk at lambda = i.
_w = OMEGA
FOURIER_TPLUS = np.array(
    [
        [_w, 0, 0],
        [(-_w - 5) / (3 * _w), (1 - _w) / 3, (1 - _w) / (3 * _w)],
        [1 / (_w * (1 - _w)), _w / (1 - _w), 1 / (1 - _w)],
    ],
    dtype=complex,
)
FOURIER_TMINUS = np.array(
    [
        [1 / (_w * (1 - _w))] * 3,
        [(-1 - 2 * _w) / (3 * (1 + _w))] * 2 + [(-4 - 5 * _w) / (3 * (1 + _w))],
        [0, 0, 1],
    ],
    dtype=complex,
)

# Closed-form Fourier stationary amplitudes by residue class of the position
# (keys: 0, 1, 2 for x = 3m, 3m+1, 3m+2 with m >= 0; -1, -2 for x = -3m-1,
# -3m-2), for origin amplitude (1, 0, -omega^-2).
FOURIER_AMPLITUDE_CASES = {
    0: np.array([1, 0, -_w**-2], dtype=complex),
    1: np.array([_w, (-2 - _w) / _w, -_w**-2], dtype=complex),
    2: np.array([_w * _w, (-2 * _w - 1) / _w, -_w**-2], dtype=complex),
    -1: np.array([_w**-1, (-2 * _w - 1) / _w, -_w**-2], dtype=complex),
    -2: np.array([_w**-2, (-2 - _w) / _w, -_w**-2], dtype=complex),
}


def fourier_case_key(x: int) -> int:
    """Residue-class key into FOURIER_AMPLITUDE_CASES for any integer x."""
    if x >= 0:
        return x % 3
    r = (-x) % 3
    return 0 if r == 0 else -r


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    """Haar-like random 3x3 unitary (QR with phase fixing)."""
    z = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_field(rng: np.random.Generator, max_defects: int = 3) -> tw.CoinField:
    """Random homogeneous coin with up to ``max_defects`` random overrides."""
    default = tw.make_coin(random_unitary(rng))
    n_def = int(rng.integers(0, max_defects + 1))
    positions = rng.choice(np.arange(-5, 6), size=n_def, replace=False)
    overrides = {int(p): tw.make_coin(random_unitary(rng)) for p in positions}
    return tw.CoinField(default, overrides)


def random_unit_eigenvalue(rng: np.random.Generator) -> complex:
    return complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260823)
