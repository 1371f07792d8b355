"""1-D tolerance-based dominance: decision, minimal slack, equivalence check.

F dominates G at slack eps when F(x) <= G(x) + eps on the whole interval.
F - G is piecewise linear/constant, so its supremum is decided exactly on
the merged breakpoint set together with one-sided limits; no grids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .distributions import Interval, PiecewiseCdf
from .errors import (
    BadToleranceOrderError,
    FfsdError,
    IntervalMismatchError,
    ToleranceTooLargeError,
)
from .integral import rsi
from .utility import CRITICAL_EPS, PiecewiseUtility, witness_utility

MARGIN_SLACK = 1e-9  # arithmetic slack for theorem-direction comparisons


@dataclass(frozen=True)
class FfsdVerdict:
    """Outcome of a single dominance query.

    max_violation is the exact supremum of F - G over [a, b] (a least upper
    bound: when F - G only approaches it from the left of a jump, witness_x
    is placed inside that gap so F(witness_x) - G(witness_x) still equals
    max_violation to within 1e-12).
    """

    holds: bool
    epsilon: float
    max_violation: float
    witness_x: float

    def to_report(self) -> dict:
        return {
            "holds": self.holds,
            "epsilon": self.epsilon,
            "max_violation": self.max_violation,
            "witness_x": self.witness_x,
        }


def _require_shared_interval(F: PiecewiseCdf, G: PiecewiseCdf) -> Interval:
    if F.interval != G.interval:
        raise IntervalMismatchError(
            f"cdfs on [{F.interval.a}, {F.interval.b}] vs "
            f"[{G.interval.a}, {G.interval.b}]"
        )
    return F.interval


def _diff_sup(F: PiecewiseCdf, G: PiecewiseCdf) -> tuple[float, float]:
    """Exact sup of H = F - G over [a, b] and a point (nearly) attaining it.

    Evaluates H and its left limit at every merged breakpoint; H is linear
    between them so nothing else can dominate. When the sup is a left limit
    the witness moves into the open gap: exact for step-step gaps, within
    ~1e-13 when a linear ramp is involved.
    """
    iv = F.interval
    pts = np.unique(
        np.concatenate(([iv.a, iv.b], F.breakpoints, G.breakpoints))
    )
    pts = pts[(pts >= iv.a) & (pts <= iv.b)]
    best = -np.inf
    witness = iv.a
    best_is_left_limit = False
    best_idx = 0
    for i, t in enumerate(pts):
        t = float(t)
        h_at = F.eval(t) - G.eval(t)
        if h_at > best:
            best, witness, best_is_left_limit, best_idx = h_at, t, False, i
        if t > iv.a:
            h_left = F.left_limit(t) - G.left_limit(t)
            if h_left > best:
                best, witness, best_is_left_limit, best_idx = h_left, t, True, i
    if best_is_left_limit:
        witness = _nudge_into_gap(F, G, float(pts[best_idx - 1]), witness, best)
    return best, witness


def _nudge_into_gap(
    F: PiecewiseCdf, G: PiecewiseCdf, lo: float, hi: float, limit: float
) -> float:
    """A point x in (lo, hi) with F(x) - G(x) = limit to within 1e-12."""
    gap = hi - lo
    h_lo = F.eval(lo) - G.eval(lo)
    slope = (limit - h_lo) / gap
    if slope == 0.0:
        return lo + gap / 2  # H constant on the gap: any interior point is exact
    delta = min(gap / 2, 1e-13 / abs(slope))
    x = hi - delta
    if x >= hi or x <= lo:
        x = np.nextafter(hi, lo)
    return float(x)


def check_ffsd(F: PiecewiseCdf, G: PiecewiseCdf, eps: float) -> FfsdVerdict:
    """Does F(x) <= G(x) + eps hold for every x in [a, b]?"""
    _require_shared_interval(F, G)
    eps = float(eps)
    if eps < 0:
        raise FfsdError(f"eps must be nonnegative, got {eps}")
    sup, witness = _diff_sup(F, G)
    return FfsdVerdict(holds=bool(sup <= eps), epsilon=eps,
                       max_violation=sup, witness_x=witness)


def min_epsilon_ffsd(F: PiecewiseCdf, G: PiecewiseCdf) -> float:
    """Least eps at which dominance holds: max(0, sup(F - G))."""
    _require_shared_interval(F, G)
    sup, _ = _diff_sup(F, G)
    return max(0.0, sup)


def default_x0_grid(F: PiecewiseCdf, G: PiecewiseCdf, points: int = 64) -> np.ndarray:
    """Interior breakpoints of both cdfs, uniform interior points, and the
    maximizer of F - G (so failing instances always expose a witness)."""
    iv = _require_shared_interval(F, G)
    _, witness = _diff_sup(F, G)
    grid = np.concatenate(
        [
            F.breakpoints,
            G.breakpoints,
            np.linspace(iv.a, iv.b, points + 2)[1:-1],
            [witness],
        ]
    )
    grid = np.unique(grid)
    return grid[(grid > iv.a) & (grid < iv.b)]


@dataclass(eq=False)
class TheoremReport:
    """Two-directional numeric check of an equivalence theorem instance.

    epsilon is the derived dominance slack ((eps1 - eps2) * width in 1-D,
    (eps1 - eps2) * volume in n-D). margins holds the witness-utility
    integral margins rsi(u, F, eps1) - rsi(u, G, eps2) per reference point.
    forward_ok: every tested utility kept a margin >= -1e-9 whenever
    dominance holds. backward_ok: whenever dominance fails, some reference
    point's witness utility violates the integral inequality by at least
    max_violation - epsilon - 1e-9.
    """

    holds_lhs: bool
    holds_rhs: bool
    epsilon: float
    epsilon_out_of_range: bool
    max_violation: float
    x0s: np.ndarray
    margins: np.ndarray
    min_margin: float
    n_utilities: int
    forward_ok: bool
    backward_ok: bool
    backward_violation: float | None

    @property
    def consistent(self) -> bool:
        return self.forward_ok and self.backward_ok

    def to_report(self) -> dict:
        return {
            "holds": self.holds_lhs,
            "rhs": self.holds_rhs,
            "epsilon": self.epsilon,
            "epsilon_out_of_range": self.epsilon_out_of_range,
            "max_violation": self.max_violation,
            "margins": self.margins.tolist(),
            "x0s": self.x0s.tolist(),
            "min_margin": self.min_margin,
            "n_utilities": self.n_utilities,
            "forward_ok": self.forward_ok,
            "backward_ok": self.backward_ok,
            "backward_violation": self.backward_violation,
        }


def _validate_tolerance_pair(eps1: float, eps2: float) -> None:
    if eps2 >= eps1:
        raise BadToleranceOrderError(f"need eps2 < eps1, got {eps2} >= {eps1}")
    if eps2 <= 0:
        raise FfsdError(f"eps2 must be positive, got {eps2}")
    if eps1 >= CRITICAL_EPS:
        raise ToleranceTooLargeError(f"eps1={eps1} must be < 1/2")


def random_band_utility(
    rng: np.random.Generator,
    x0: float,
    eps2: float,
    interval: Interval,
    extra_breaks: int = 2,
) -> PiecewiseUtility:
    """Random step utility that is eps2-close to the indicator at x0.

    Plateau values left of x0 are uniform in [-eps2, eps2], right of x0 in
    [1 - eps2, 1 + eps2], with random extra breakpoints on both sides.
    """
    a, b = interval.a, interval.b
    left = rng.uniform(a, x0, size=rng.integers(0, extra_breaks + 1))
    right = rng.uniform(x0, b, size=rng.integers(0, extra_breaks + 1))
    breaks = np.unique(np.concatenate([left, [x0], right]))
    breaks = breaks[(breaks > a) & (breaks < b)]
    n_left = int(np.searchsorted(breaks, x0, side="left"))
    values = np.empty(breaks.size + 1)
    values[: n_left + 1] = rng.uniform(-eps2, eps2, size=n_left + 1)
    values[n_left + 1 :] = rng.uniform(1.0 - eps2, 1.0 + eps2, size=breaks.size - n_left)
    return PiecewiseUtility(interval, "step", breaks, values)


def check_equivalence_theorem(
    F: PiecewiseCdf,
    G: PiecewiseCdf,
    eps1: float,
    eps2: float,
    x0_grid: Sequence[float] | None = None,
    n_random_utilities: int = 2,
    rng: np.random.Generator | None = None,
) -> TheoremReport:
    """Check both directions of the dominance/expected-utility equivalence.

    The derived slack is eps = (eps1 - eps2) * (b - a). The forward
    direction samples, at each grid x0, the proof witness utility plus
    n_random_utilities random eps2-close step utilities; the backward
    direction is certified on the grid through the witness family alone.
    """
    iv = _require_shared_interval(F, G)
    eps1 = float(eps1)
    eps2 = float(eps2)
    _validate_tolerance_pair(eps1, eps2)
    epsilon = (eps1 - eps2) * iv.width
    if x0_grid is None:
        grid = default_x0_grid(F, G)
    else:
        grid = np.unique(np.asarray(x0_grid, dtype=np.float64))
        if grid.size == 0:
            raise FfsdError("x0_grid must be non-empty")
        if grid.min() <= iv.a or grid.max() >= iv.b:
            raise FfsdError("x0_grid points must lie strictly inside (a, b)")
    if rng is None:
        rng = np.random.default_rng(0)

    verdict = check_ffsd(F, G, epsilon)
    margins = np.empty(grid.size)
    min_margin = np.inf
    n_utils = 0
    for i, x0 in enumerate(grid):
        x0 = float(x0)
        utilities = [witness_utility(x0, eps2, iv)]
        utilities += [
            random_band_utility(rng, x0, eps2, iv)
            for _ in range(n_random_utilities)
        ]
        for k, u in enumerate(utilities):
            margin = rsi(u, F, eps1).value - rsi(u, G, eps2).value
            if k == 0:
                margins[i] = margin
            min_margin = min(min_margin, margin)
            n_utils += 1

    holds_rhs = bool(min_margin >= -MARGIN_SLACK)
    forward_ok = (not verdict.holds) or holds_rhs
    if verdict.holds:
        backward_ok = True
        backward_violation = None
    else:
        worst = float(np.min(margins))
        backward_violation = -worst
        backward_ok = bool(
            backward_violation >= verdict.max_violation - epsilon - MARGIN_SLACK
        )
    return TheoremReport(
        holds_lhs=verdict.holds,
        holds_rhs=holds_rhs,
        epsilon=epsilon,
        epsilon_out_of_range=bool(epsilon >= CRITICAL_EPS),
        max_violation=verdict.max_violation,
        x0s=grid,
        margins=margins,
        min_margin=float(min_margin),
        n_utilities=n_utils,
        forward_ok=bool(forward_ok),
        backward_ok=backward_ok,
        backward_violation=backward_violation,
    )
