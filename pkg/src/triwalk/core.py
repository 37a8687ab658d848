"""Core value types for three-state coined walks on the integer line.

A walker carries a three-component amplitude at each site: a left-moving,
a looping (staying), and a right-moving component. The coin at each site
is a 3x3 unitary whose rows feed those three movements. All types here are
immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np
from numpy.typing import NDArray

from .errors import NotUnitary, WalkError

__all__ = [
    "UNITARITY_TOL",
    "UNIT_CIRCLE_TOL",
    "ComplexTriple",
    "CoinMatrix",
    "CoinDecomposition",
    "CoinField",
    "AmplitudeSegment",
    "make_coin",
    "decompose",
]

#: Tolerance on max |U†U - I| when accepting a coin matrix.
UNITARITY_TOL = 1e-10

#: Tolerance on ||lambda| - 1| when accepting an eigenvalue.
UNIT_CIRCLE_TOL = 1e-12


@dataclass(frozen=True)
class ComplexTriple:
    """One site's amplitude: left-moving, looping, and right-moving components."""

    left: complex
    loop: complex
    right: complex

    def as_array(self) -> NDArray[np.complex128]:
        return np.array([self.left, self.loop, self.right], dtype=np.complex128)

    @classmethod
    def from_array(cls, vec) -> "ComplexTriple":
        vec = np.asarray(vec, dtype=np.complex128)
        if vec.shape != (3,):
            raise ValueError(f"expected a length-3 vector, got shape {vec.shape}")
        return cls(complex(vec[0]), complex(vec[1]), complex(vec[2]))

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.as_array().view(np.float64))))

    def __add__(self, other: "ComplexTriple") -> "ComplexTriple":
        return ComplexTriple(
            self.left + other.left, self.loop + other.loop, self.right + other.right
        )

    def scaled(self, c: complex) -> "ComplexTriple":
        return ComplexTriple(c * self.left, c * self.loop, c * self.right)


def _readonly(mat: np.ndarray) -> np.ndarray:
    out = np.array(mat, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class CoinMatrix:
    """A 3x3 unitary coin with named entry accessors a..i (row-major).

    Construction validates unitarity within ``UNITARITY_TOL`` and raises
    :class:`NotUnitary` otherwise. Entries are stored verbatim.
    """

    matrix: NDArray[np.complex128]

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=np.complex128)
        if mat.shape != (3, 3):
            raise ValueError(f"coin must be 3x3, got shape {mat.shape}")
        if not np.all(np.isfinite(mat.view(np.float64))):
            raise ValueError("coin entries must be finite")
        deviation = float(np.max(np.abs(mat.conj().T @ mat - np.eye(3))))
        if deviation > UNITARITY_TOL:
            raise NotUnitary(deviation)
        object.__setattr__(self, "matrix", _readonly(mat))

    def unitarity_deviation(self) -> float:
        """Re-assertable check: max entry of |U†U - I|."""
        return float(np.max(np.abs(self.matrix.conj().T @ self.matrix - np.eye(3))))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoinMatrix):
            return NotImplemented
        return bool(np.array_equal(self.matrix, other.matrix))

    # Row 1 feeds the left movement, row 2 the loop, row 3 the right movement.
    @property
    def a(self) -> complex:
        return complex(self.matrix[0, 0])

    @property
    def b(self) -> complex:
        return complex(self.matrix[0, 1])

    @property
    def c(self) -> complex:
        return complex(self.matrix[0, 2])

    @property
    def d(self) -> complex:
        return complex(self.matrix[1, 0])

    @property
    def e(self) -> complex:
        return complex(self.matrix[1, 1])

    @property
    def f(self) -> complex:
        return complex(self.matrix[1, 2])

    @property
    def g(self) -> complex:
        return complex(self.matrix[2, 0])

    @property
    def h(self) -> complex:
        return complex(self.matrix[2, 1])

    @property
    def i(self) -> complex:
        return complex(self.matrix[2, 2])


def make_coin(*entries: complex) -> CoinMatrix:
    """Build a coin from 9 complex scalars in row-major order.

    Raises
    ------
    NotUnitary
        If max |U†U - I| exceeds ``UNITARITY_TOL``.
    """
    if len(entries) == 1 and np.ndim(entries[0]) == 2:
        return CoinMatrix(np.asarray(entries[0]))
    if len(entries) != 9:
        raise ValueError(f"make_coin expects 9 entries, got {len(entries)}")
    return CoinMatrix(np.array(entries, dtype=np.complex128).reshape(3, 3))


@dataclass(frozen=True)
class CoinDecomposition:
    """Row split of a coin: p keeps row 1, r row 2, q row 3, rest exactly zero."""

    p: NDArray[np.complex128]
    r: NDArray[np.complex128]
    q: NDArray[np.complex128]


def decompose(coin: CoinMatrix) -> CoinDecomposition:
    """Split a coin into its left-move, loop, and right-move parts.

    The split is pure row selection, so ``p + r + q`` equals the source
    matrix bit-exactly.
    """
    p = np.zeros((3, 3), dtype=np.complex128)
    r = np.zeros((3, 3), dtype=np.complex128)
    q = np.zeros((3, 3), dtype=np.complex128)
    p[0] = coin.matrix[0]
    r[1] = coin.matrix[1]
    q[2] = coin.matrix[2]
    return CoinDecomposition(_readonly(p), _readonly(r), _readonly(q))


@dataclass(frozen=True)
class CoinField:
    """Coin assignment over the whole line: a default coin plus finite overrides."""

    default_coin: CoinMatrix
    overrides: Mapping[int, CoinMatrix] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "overrides", MappingProxyType({int(k): v for k, v in self.overrides.items()})
        )

    def coin_at(self, x: int) -> CoinMatrix:
        """Coin acting at position ``x`` (override if present, else default)."""
        return self.overrides.get(int(x), self.default_coin)


def _check_unit_circle(lam: complex) -> complex:
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > UNIT_CIRCLE_TOL:
        raise WalkError(f"eigenvalue must lie on the unit circle, got |lambda| = {abs(lam)!r}")
    return lam


@dataclass(frozen=True, eq=False)
class AmplitudeSegment:
    """Amplitudes over a contiguous window [x_min, x_max] containing the origin.

    ``values`` is an (n, 3) complex array, one row per site in increasing
    position order. ``lam`` is the eigenvalue the amplitudes belong to and
    must lie on the unit circle. Amplitudes are unnormalized on purpose:
    stationary solutions need not be square-summable over the line.
    """

    x_min: int
    x_max: int
    values: NDArray[np.complex128]
    lam: complex

    def __post_init__(self) -> None:
        x_min, x_max = int(self.x_min), int(self.x_max)
        if not (x_min <= 0 <= x_max):
            raise ValueError(f"window [{x_min}, {x_max}] must contain the origin")
        vals = np.asarray(self.values, dtype=np.complex128)
        n = x_max - x_min + 1
        if vals.shape != (n, 3):
            raise ValueError(f"values must have shape ({n}, 3), got {vals.shape}")
        if not np.all(np.isfinite(vals.view(np.float64))):
            raise ValueError("amplitudes must be finite")
        object.__setattr__(self, "x_min", x_min)
        object.__setattr__(self, "x_max", x_max)
        object.__setattr__(self, "values", _readonly(vals))
        object.__setattr__(self, "lam", _check_unit_circle(self.lam))

    @property
    def n_sites(self) -> int:
        return self.x_max - self.x_min + 1

    def positions(self) -> range:
        return range(self.x_min, self.x_max + 1)

    def index(self, x: int) -> int:
        if not (self.x_min <= x <= self.x_max):
            raise IndexError(f"position {x} outside window [{self.x_min}, {self.x_max}]")
        return x - self.x_min

    def amplitude(self, x: int) -> NDArray[np.complex128]:
        """Amplitude vector at position ``x`` as a length-3 array."""
        return self.values[self.index(x)]

    def triple(self, x: int) -> ComplexTriple:
        return ComplexTriple.from_array(self.amplitude(x))
