"""Independent one-step evolution oracle and eigen-equation residuals.

Everything the transfer engine produces can be cross-checked here without
touching transfer matrices: one direct step of the walk, the componentwise
eigenvalue-equation residual, and the deviation of the measure under
repeated stepping. Windows shrink by one site per side per step; no
boundary condition is invented, callers pick windows large enough that the
region of interest stays interior.
"""

from __future__ import annotations

import numpy as np

from .core import AmplitudeSegment, CoinField
from .errors import WindowTooSmall
from .measure import phi_values

__all__ = ["step", "eigen_residual", "stationarity_deviation"]


def _require_shrinkable(segment: AmplitudeSegment) -> None:
    if segment.n_sites < 3:
        raise WindowTooSmall(
            f"need at least 3 sites, got {segment.n_sites}"
        )
    if not (segment.x_min + 1 <= 0 <= segment.x_max - 1):
        raise WindowTooSmall(
            f"window [{segment.x_min}, {segment.x_max}] cannot shrink and keep the origin"
        )


def step(field: CoinField, segment: AmplitudeSegment) -> AmplitudeSegment:
    """One direct step of the walk on a windowed amplitude.

    The new amplitude at x combines the left-move part of the coin at x+1,
    the loop part at x, and the right-move part at x-1:

        psi'(x) = P(x+1) psi(x+1) + R(x) psi(x) + Q(x-1) psi(x-1)

    Sites needing out-of-window neighbors are dropped, so the result lives
    on [x_min + 1, x_max - 1].
    """
    _require_shrinkable(segment)
    n_out = segment.n_sites - 2
    out = np.zeros((n_out, 3), dtype=np.complex128)
    for k, x in enumerate(range(segment.x_min + 1, segment.x_max)):
        left = segment.amplitude(x + 1)
        here = segment.amplitude(x)
        right = segment.amplitude(x - 1)
        out[k, 0] = field.coin_at(x + 1).matrix[0] @ left
        out[k, 1] = field.coin_at(x).matrix[1] @ here
        out[k, 2] = field.coin_at(x - 1).matrix[2] @ right
    return AmplitudeSegment(segment.x_min + 1, segment.x_max - 1, out, segment.lam)


def eigen_residual(field: CoinField, segment: AmplitudeSegment) -> float:
    """Max-norm violation of the three componentwise eigen-equations.

    At every interior site x the stationary amplitude must satisfy

        lambda L(x) = a(x+1) L(x+1) + b(x+1) O(x+1) + c(x+1) R(x+1)
        lambda O(x) = d(x)   L(x)   + e(x)   O(x)   + f(x)   R(x)
        lambda R(x) = g(x-1) L(x-1) + h(x-1) O(x-1) + i(x-1) R(x-1)

    The max norm over sites and equations is reported rather than an l2
    aggregate so a failure localizes to a site and an equation.
    """
    _require_shrinkable(segment)
    lam = segment.lam
    worst = 0.0
    for x in range(segment.x_min + 1, segment.x_max):
        here = segment.amplitude(x)
        res_left = abs(lam * here[0] - field.coin_at(x + 1).matrix[0] @ segment.amplitude(x + 1))
        res_loop = abs(lam * here[1] - field.coin_at(x).matrix[1] @ here)
        res_right = abs(lam * here[2] - field.coin_at(x - 1).matrix[2] @ segment.amplitude(x - 1))
        worst = max(worst, res_left, res_loop, res_right)
    return worst


def stationarity_deviation(
    field: CoinField, segment: AmplitudeSegment, n_steps: int
) -> float:
    """Max change of the site measure over ``n_steps`` direct steps.

    For a truly stationary amplitude this is zero up to rounding: the
    measure profile is preserved by every power of the evolution. Each step
    loses one site per side, so the window must have at least
    ``2 * n_steps + 1`` sites with the origin surviving the shrinkage.
    """
    n_steps = int(n_steps)
    if n_steps < 1:
        raise ValueError("n_steps must be positive")
    if segment.n_sites < 2 * n_steps + 1 or not (
        segment.x_min + n_steps <= 0 <= segment.x_max - n_steps
    ):
        raise WindowTooSmall(
            f"window [{segment.x_min}, {segment.x_max}] too small for {n_steps} steps"
        )
    base = phi_values(segment.values)
    current = segment
    worst = 0.0
    for _ in range(n_steps):
        current = step(field, current)
        offset = current.x_min - segment.x_min
        now = phi_values(current.values)
        ref = base[offset : offset + current.n_sites]
        worst = max(worst, float(np.max(np.abs(now - ref))))
    return worst
