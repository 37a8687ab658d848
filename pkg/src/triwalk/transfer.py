"""Transfer-matrix construction and stationary-amplitude propagation.

For an eigen-solution U Psi = lambda Psi of the whole-line walk operator,
the amplitude at a site is a linear image of the amplitude one site closer
to the origin. The two 3x3 matrices realizing that map (one per direction)
are built here entrywise from the coins at the two sites involved, and
stationary amplitudes are obtained by applying them outward from the
origin, one site at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from .core import AmplitudeSegment, CoinField, ComplexTriple, _check_unit_circle, _readonly
from .errors import ConstraintViolated, OverflowDetected, SingularDenominator

__all__ = [
    "SINGULAR_TOL",
    "CONSTRAINT_TOL",
    "OVERFLOW_LIMIT",
    "TransferMatrix",
    "OriginConstraint",
    "transfer_plus",
    "transfer_minus",
    "origin_constraint",
    "solve_initial_states",
    "propagate",
]

#: Below this |denominator| the transfer entries are numerically meaningless.
SINGULAR_TOL = 1e-12

#: Max allowed residual of the origin constraint for a supplied initial state.
CONSTRAINT_TOL = 1e-10

#: Amplitude magnitude treated as overflow during propagation.
OVERFLOW_LIMIT = 1e150

#: Below this, all constraint coefficients count as zero (vacuous constraint).
VACUOUS_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class TransferMatrix:
    """A 3x3 transfer matrix with its provenance (direction, site, eigenvalue).

    ``direction == "plus"`` maps the amplitude at ``site - 1`` to the one at
    ``site``; ``direction == "minus"`` maps ``site + 1`` to ``site``.
    """

    matrix: NDArray[np.complex128]
    direction: Literal["plus", "minus"]
    site: int
    lam: complex

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=np.complex128)
        if mat.shape != (3, 3):
            raise ValueError(f"transfer matrix must be 3x3, got {mat.shape}")
        if not np.all(np.isfinite(mat.view(np.float64))):
            raise ValueError("transfer entries must be finite")
        if self.direction not in ("plus", "minus"):
            raise ValueError(f"direction must be 'plus' or 'minus', got {self.direction!r}")
        object.__setattr__(self, "matrix", _readonly(mat))

    def apply(self, vec) -> NDArray[np.complex128]:
        return self.matrix @ np.asarray(vec, dtype=np.complex128)


def transfer_plus(field: CoinField, y: int, lam: complex) -> TransferMatrix:
    """Transfer matrix mapping the amplitude at y-1 to the one at y.

    Entries are built from the coins at y (a..f in the numerators and the
    denominator) and at y-1 (whose bottom row lands, divided by lambda, in
    the bottom row of the result).

    Raises
    ------
    SingularDenominator
        If |lambda * (a_y (lambda - e_y) + b_y d_y)| < ``SINGULAR_TOL``.
    """
    lam = _check_unit_circle(lam)
    u = field.coin_at(y)
    v = field.coin_at(y - 1)
    a, b, c, d, e, f = u.a, u.b, u.c, u.d, u.e, u.f
    g1, h1, i1 = v.g, v.h, v.i
    den = lam * (a * (lam - e) + b * d)
    if abs(den) < SINGULAR_TOL:
        raise SingularDenominator(y, abs(den))
    top_shared = b * f + c * (lam - e)
    mid_shared = a * f - c * d
    mat = np.array(
        [
            [
                ((lam - e) * (lam * lam - g1 * c) - g1 * b * f) / den,
                -h1 * top_shared / den,
                -i1 * top_shared / den,
            ],
            [
                (lam * lam * d + g1 * mid_shared) / den,
                h1 * mid_shared / den,
                i1 * mid_shared / den,
            ],
            [g1 / lam, h1 / lam, i1 / lam],
        ],
        dtype=np.complex128,
    )
    return TransferMatrix(mat, "plus", int(y), lam)


def transfer_minus(field: CoinField, y: int, lam: complex) -> TransferMatrix:
    """Transfer matrix mapping the amplitude at y+1 to the one at y.

    Mirror of :func:`transfer_plus`: the top row is the top row of the coin
    at y+1 divided by lambda, and the denominator comes from the coin at y.

    Raises
    ------
    SingularDenominator
        If |lambda * (h_y f_y + i_y (lambda - e_y))| < ``SINGULAR_TOL``.
    """
    lam = _check_unit_circle(lam)
    u = field.coin_at(y)
    v = field.coin_at(y + 1)
    d, e, f, g, h, i = u.d, u.e, u.f, u.g, u.h, u.i
    a1, b1, c1 = v.a, v.b, v.c
    den = lam * (h * f + i * (lam - e))
    if abs(den) < SINGULAR_TOL:
        raise SingularDenominator(y, abs(den))
    mid_shared = f * g - i * d
    bot_shared = h * d + g * (lam - e)
    mat = np.array(
        [
            [a1 / lam, b1 / lam, c1 / lam],
            [
                -a1 * mid_shared / den,
                -b1 * mid_shared / den,
                (lam * lam * f - c1 * mid_shared) / den,
            ],
            [
                -a1 * bot_shared / den,
                -b1 * bot_shared / den,
                ((lam - e) * (lam * lam - g * c1) - h * c1 * d) / den,
            ],
        ],
        dtype=np.complex128,
    )
    return TransferMatrix(mat, "minus", int(y), lam)


@dataclass(frozen=True)
class OriginConstraint:
    """Linear relation the amplitude at the origin must satisfy.

    The loop equation at x = 0 forces
    ``coeff_left * L + coeff_loop * O + coeff_right * R = 0``
    for any stationary amplitude (L, O, R) at the origin. When all three
    coefficients vanish the constraint is vacuous and ``vacuous`` is set.
    """

    coeff_left: complex
    coeff_loop: complex
    coeff_right: complex
    vacuous: bool

    def residual(self, triple: ComplexTriple) -> float:
        """Absolute violation of the constraint by a candidate triple."""
        return abs(
            self.coeff_left * triple.left
            + self.coeff_loop * triple.loop
            + self.coeff_right * triple.right
        )


def origin_constraint(field: CoinField, lam: complex) -> OriginConstraint:
    """Constraint on the origin amplitude: (d_0, e_0 - lambda, f_0)."""
    lam = _check_unit_circle(lam)
    u0 = field.coin_at(0)
    coeffs = (u0.d, u0.e - lam, u0.f)
    vacuous = max(abs(c) for c in coeffs) <= VACUOUS_TOL
    return OriginConstraint(*coeffs, vacuous=vacuous)


def solve_initial_states(constraint: OriginConstraint) -> list[ComplexTriple]:
    """Basis of the space of admissible origin amplitudes.

    Returns two linearly independent triples satisfying the constraint, or
    the full standard basis of three triples when the constraint is vacuous
    (every triple is then admissible; check ``constraint.vacuous``).
    """
    if constraint.vacuous:
        return [
            ComplexTriple(1, 0, 0),
            ComplexTriple(0, 1, 0),
            ComplexTriple(0, 0, 1),
        ]
    coeffs = np.array(
        [constraint.coeff_left, constraint.coeff_loop, constraint.coeff_right],
        dtype=np.complex128,
    )
    pivot = int(np.argmax(np.abs(coeffs)))
    basis = []
    for j in range(3):
        if j == pivot:
            continue
        vec = np.zeros(3, dtype=np.complex128)
        vec[j] = 1.0
        vec[pivot] = -coeffs[j] / coeffs[pivot]
        basis.append(ComplexTriple.from_array(vec))
    return basis


def propagate(
    field: CoinField,
    lam: complex,
    psi0: ComplexTriple,
    x_min: int,
    x_max: int,
) -> AmplitudeSegment:
    """Stationary amplitudes over [x_min, x_max] grown outward from the origin.

    The amplitude at each site is obtained by one matrix-vector application
    of the transfer matrix for that site to the previous site's amplitude,
    never by forming full matrix products. The supplied origin amplitude
    must satisfy the origin constraint; silently projecting it would mask
    caller errors, so a violation is a hard error.

    Raises
    ------
    ConstraintViolated
        If ``psi0`` misses the origin constraint by more than ``CONSTRAINT_TOL``.
    SingularDenominator
        Propagated from transfer-matrix construction.
    OverflowDetected
        If any amplitude magnitude exceeds ``OVERFLOW_LIMIT`` (exponentially
        growing solutions exist and must fail loudly, not as silent Inf).
    """
    lam = _check_unit_circle(lam)
    x_min, x_max = int(x_min), int(x_max)
    if not (x_min <= 0 <= x_max):
        raise ValueError(f"window [{x_min}, {x_max}] must contain the origin")
    constraint = origin_constraint(field, lam)
    if not constraint.vacuous:
        res = constraint.residual(psi0)
        if res > CONSTRAINT_TOL:
            raise ConstraintViolated(res)

    n = x_max - x_min + 1
    values = np.zeros((n, 3), dtype=np.complex128)
    origin_idx = -x_min
    values[origin_idx] = psi0.as_array()

    vec = values[origin_idx].copy()
    for x in range(1, x_max + 1):
        vec = transfer_plus(field, x, lam).apply(vec)
        if np.max(np.abs(vec)) > OVERFLOW_LIMIT:
            raise OverflowDetected(x)
        values[origin_idx + x] = vec

    vec = values[origin_idx].copy()
    for x in range(-1, x_min - 1, -1):
        vec = transfer_minus(field, x, lam).apply(vec)
        if np.max(np.abs(vec)) > OVERFLOW_LIMIT:
            raise OverflowDetected(x)
        values[origin_idx + x] = vec

    return AmplitudeSegment(x_min, x_max, values, lam)
