"""Deliberately naive oracles used by the property suites.

Everything here is brute force on purpose (dense grids, direct counting,
one-sided limits enumerated point by point) and shares no code path with
the closed-form operations it cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import Interval, PiecewiseCdf
from .errors import DegenerateInputError, FfsdError, OutOfDomainError
from .utility import PiecewiseUtility, indicator


@dataclass(frozen=True)
class GridSpec:
    """Evaluation grid: points per axis, plus one-sided limits at breakpoints."""

    resolution: int
    include_limits: bool = True

    def __post_init__(self):
        if self.resolution < 2:
            raise FfsdError(f"grid resolution must be >= 2, got {self.resolution}")


def grid_sup_distance(u: PiecewiseUtility, x0: float, grid: GridSpec) -> float:
    """max |u(x) - indicator(x0, x)| over the grid plus breakpoint limits.

    Lower-bounds the true sup; with limits included it attains it exactly
    for piecewise-constant/linear utilities, since every one-sided value at
    a discontinuity of u or of the indicator is enumerated.
    """
    x0 = float(x0)
    iv = u.interval
    if not iv.interior_contains(x0):
        raise OutOfDomainError(f"x0={x0} not in the open interval")
    xs = np.linspace(iv.a, iv.b, grid.resolution)
    best = float(np.max(np.abs(u.eval_many(xs) - indicator(x0, xs))))
    if grid.include_limits:
        specials = list(u.breakpoints) + [x0]
        for t in specials:
            t = float(t)
            best = max(best, abs(u.eval(t) - indicator(x0, t)))
            if t < iv.b:
                # just right of t the indicator is 1 iff t >= x0
                ind_right = 1.0 if t >= x0 else 0.0
                best = max(best, abs(u.right_limit(t) - ind_right))
    return best


@dataclass(frozen=True)
class MidpointCertificate:
    """Numeric certificate that one utility cannot be close to two indicators.

    At the midpoint z of two candidate references, the distances to the two
    indicators sum to at least |1 - 0| = 1, so both cannot stay below any
    eps < 1/2.
    """

    z: float
    d1_lower: float
    d2_lower: float


def midpoint_contradiction_certificate(
    u: PiecewiseUtility, x1: float, x2: float
) -> MidpointCertificate:
    """Evaluate |u(z) - indicator(x_i, z)| at the midpoint z of x1 and x2."""
    x1, x2 = float(x1), float(x2)
    if x1 == x2:
        raise DegenerateInputError("x1 and x2 must be distinct")
    iv = u.interval
    if not (iv.interior_contains(x1) and iv.interior_contains(x2)):
        raise OutOfDomainError("x1 and x2 must lie in the open interval")
    z = (x1 + x2) / 2
    uz = u.eval(z)
    return MidpointCertificate(
        z=z,
        d1_lower=abs(uz - indicator(x1, z)),
        d2_lower=abs(uz - indicator(x2, z)),
    )


def ambiguous_utility(interval: Interval) -> PiecewiseUtility:
    """u = 1/2 everywhere: exactly 1/2 away from every indicator.

    The canonical pathology at the critical threshold: at eps = 1/2 every
    reference point in (a, b) is feasible at once.
    """
    return PiecewiseUtility(interval, "step", [], [0.5])


def grid_max_violation(
    F: PiecewiseCdf, G: PiecewiseCdf, resolution: int = 100_000
) -> float:
    """Brute-force sup of F - G: a dense grid enriched with the merged
    breakpoints and nearest-representable points just left of each."""
    iv = F.interval
    base = np.linspace(iv.a, iv.b, resolution)
    bps = np.concatenate([F.breakpoints, G.breakpoints])
    bps = bps[(bps >= iv.a) & (bps <= iv.b)]
    just_left = np.nextafter(bps, -np.inf)
    just_left = just_left[just_left >= iv.a]
    xs = np.unique(np.concatenate([base, bps, just_left]))
    return float(np.max(F.eval_many(xs) - G.eval_many(xs)))
