"""Robust credible sets: intervals that cover under every posterior in a set.

A robust alpha-credible set must hold at least alpha posterior mass under
*every* member of a family of distributions at once.  Taking the union of
the per-member shortest intervals is always a valid (conservative)
construction, but it is not minimal.  The translated triangular family is
solvable in closed form and exposes the whole story: per-member shortest
intervals, their union, and the genuinely minimal robust interval, which
is strictly shorter.  One-sided sets reduce to a pointwise minimum.  For
the mutual information the interval is assembled from the conservative
mean bounds plus a Gaussian-multiplier term on the leading-order standard
deviation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence


from .mutual_info import ContingencyCounts, mi_interval_bounds, mi_variance_leading
from .simplex_core import IdmConfig, Interval, SimplexPoint
from .special_fn import kappa_from_alpha


@dataclass(frozen=True)
class CredibleSpec:
    """Coverage level ``alpha`` with its derived Gaussian multiplier."""

    alpha: float
    kappa: float = field(init=False)

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie strictly between 0 and 1")
        object.__setattr__(self, "kappa", kappa_from_alpha(self.alpha))


@dataclass(frozen=True)
class TriangularFamily:
    """Unit triangular densities translated over ``t in [-gamma, gamma]``."""

    gamma: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")


def _triangle_cdf_centered(z: float) -> float:
    # Integral of max(0, 1-|x|) from 0 to z, for z in [-1, 1].
    return z * (1.0 - 0.5 * abs(z))


def triangular_mass(t: float, a: float, b: float) -> float:
    """Mass of ``[a, b]`` under the triangular density centered at ``t``.

    The density is ``p_t(x) = max(0, 1 - |x - t|)``; endpoints are shifted
    by ``t`` and clamped to the support before the closed-form antiderivative
    ``z (1 - |z|/2)`` is differenced.
    """
    if a > b:
        raise ValueError("interval endpoints out of order")
    za = min(max(a - t, -1.0), 1.0)
    zb = min(max(b - t, -1.0), 1.0)
    return abs(_triangle_cdf_centered(zb) - _triangle_cdf_centered(za))


def triangular_shortest_interval(t: float, alpha: float) -> Interval:
    """Shortest alpha-credible interval of one triangular density.

    For ``alpha >= 1/2`` this is ``t -/+ (1 - sqrt(1 - alpha))``, symmetric
    around the mode; its mass is exactly ``alpha``.
    """
    _require_alpha_regime(alpha)
    c = 1.0 - math.sqrt(1.0 - alpha)
    return Interval(t - c, t + c)


def triangular_robust_union(gamma: float, alpha: float) -> Interval:
    """Union of the per-member shortest intervals over ``t in [-gamma, gamma]``.

    A valid robust credible interval (each member's own interval is
    inside), but not the shortest one; compare
    :func:`triangular_minimal_robust`.
    """
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    _require_alpha_regime(alpha)
    c = 1.0 - math.sqrt(1.0 - alpha)
    return Interval(-gamma - c, gamma + c)


def triangular_minimal_robust(gamma: float, alpha: float) -> Interval:
    """The minimal robust alpha-credible interval of the triangular family.

    Piecewise in ``gamma``: below the seam ``gamma^2 = (1 - alpha)/2`` the
    binding members are the extreme translates with partially truncated
    tails, above it the two extremes dominate outright.  Both branches
    agree at the seam, and the result is a proper subinterval of the union
    for every ``gamma > 0``.
    """
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    _require_alpha_regime(alpha)
    if gamma * gamma <= 0.5 * (1.0 - alpha):
        radicand = 1.0 - alpha - gamma * gamma
        if radicand < 0:
            raise AssertionError("negative radicand inside the small-gamma branch")
        radius = 1.0 - math.sqrt(radicand)
    else:
        radius = gamma + 1.0 - math.sqrt(2.0 * (1.0 - alpha))
    return Interval(-radius, radius)


def _require_alpha_regime(alpha: float) -> None:
    if not 0.5 <= alpha < 1.0:
        raise ValueError("alpha must lie in [0.5, 1) for the triangular closed forms")


def one_sided_robust_bound(per_t_lower: Callable, t_grid: Sequence[float]) -> float:
    """Robust lower endpoint for one-sided sets ``[a, inf)``.

    For one-sided intervals the minimal robust set *is* the union of the
    per-member minimal sets, so the robust endpoint is the pointwise
    minimum of the per-member endpoints over the grid.  Refining the grid
    can only lower (never raise) the result, keeping it conservative.
    """
    grid = list(t_grid)
    if not grid:
        raise ValueError("t_grid must be non-empty")
    values = [float(per_t_lower(t)) for t in grid]
    if not all(math.isfinite(v) for v in values):
        raise ValueError("per-member endpoints must be finite on the grid")
    return min(values)


def robust_credible_mi(
    tbl: ContingencyCounts,
    cfg: IdmConfig,
    spec: CredibleSpec,
    t_star: Optional[SimplexPoint] = None,
) -> Interval:
    """Gaussian-approximation robust credible interval for the expected MI.

    Upper endpoint ``i0 + r_ub + kappa * sqrt(Var)`` and mirrored lower
    endpoint, with the variance evaluated at a single ``t_star`` (default:
    the uniform cell hyperparameter; the variance varies with ``t`` only at
    higher order).  Not strictly conservative: both the Gaussian shape and
    the leading-order variance ignore higher-order terms.
    """
    d1, d2 = tbl.shape
    if t_star is None:
        t_star = SimplexPoint.uniform(d1 * d2)
    bounds = mi_interval_bounds(tbl, cfg)
    spread = spec.kappa * math.sqrt(mi_variance_leading(tbl, cfg, t_star))
    return Interval(bounds.i0 + bounds.r_lb - spread, bounds.i0 + bounds.r_ub + spread)
