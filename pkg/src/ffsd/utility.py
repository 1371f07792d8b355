"""Piecewise utility functions and exact indicator classification.

The classification predicate asks whether a utility is an exact threshold
indicator, or within sup-norm tolerance eps of one, for some reference
point in the open interval. Below the critical threshold eps < 1/2 the
reference is unique and must sit at a jump of the utility, so scanning the
utility's breakpoints is a complete (and exact) search.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

import numpy as np

from .distributions import Interval, LINEAR, STEP
from .errors import (
    FfsdError,
    OutOfDomainError,
    ToleranceTooLargeError,
    UniquenessViolationError,
)

CRITICAL_EPS = 0.5  # classification is ill-posed at or above this tolerance


class MatchKind(Enum):
    EXACT = "exact"
    APPROX = "approx"
    NEITHER = "neither"


@dataclass(frozen=True, eq=False)
class IndicatorClass:
    """Classification verdict against the indicator predicates.

    ``achieved_sup`` is the exact sup-distance at ``reference`` (0.0 for
    exact matches, None for NEITHER). ``grid_certified`` marks verdicts that
    were only checked over a finite point grid (n-D callables) rather than
    the whole domain.
    """

    variant: MatchKind
    reference: Union[float, np.ndarray, None] = None
    achieved_sup: float | None = None
    grid_certified: bool = False

    @property
    def is_exact(self) -> bool:
        return self.variant is MatchKind.EXACT

    @property
    def is_approx(self) -> bool:
        return self.variant is MatchKind.APPROX

    def to_report(self) -> dict:
        ref = self.reference
        if isinstance(ref, np.ndarray):
            ref = ref.tolist()
        return {
            "case": self.variant.value,
            "reference": ref,
            "achieved_sup": self.achieved_sup,
            "grid_certified": self.grid_certified,
        }


def indicator(x0: float, x) -> float:
    """Threshold indicator: 1 for x > x0 strictly, else 0."""
    if isinstance(x, np.ndarray):
        return (x > x0).astype(np.float64)
    return 1.0 if x > x0 else 0.0


@dataclass(eq=False)
class PiecewiseUtility:
    """Utility with finitely many constant or linear segments on [a, b].

    kind="step": ``values`` has len(breakpoints)+1 segment constants; the
    value AT a breakpoint belongs to the left segment, matching the strict
    "x > x0" branch of the indicator so an exact indicator is representable
    with sup-distance 0.

    kind="linear": continuous, ``values`` has len(breakpoints)+2 node values
    at [a, *breakpoints, b].
    """

    interval: Interval
    kind: str
    breakpoints: np.ndarray
    values: np.ndarray
    _knots: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.kind not in (STEP, LINEAR):
            raise FfsdError(f"unknown utility kind {self.kind!r}")
        bp = np.asarray(self.breakpoints, dtype=np.float64).reshape(-1)
        v = np.asarray(self.values, dtype=np.float64).reshape(-1)
        if bp.size and not np.all(np.diff(bp) > 0):
            raise FfsdError("breakpoints must be strictly increasing")
        a, b = self.interval.a, self.interval.b
        if bp.size and (bp[0] <= a or bp[-1] >= b):
            raise FfsdError("utility breakpoints must lie in (a, b)")
        expected = bp.size + 1 if self.kind == STEP else bp.size + 2
        if v.size != expected:
            raise FfsdError(
                f"{self.kind} utility with {bp.size} breakpoints needs "
                f"{expected} values, got {v.size}"
            )
        bp.setflags(write=False)
        v.setflags(write=False)
        self.breakpoints = bp
        self.values = v
        knots = np.concatenate(([a], bp, [b])) if self.kind == LINEAR else bp
        knots.setflags(write=False)
        self._knots = knots

    # -- evaluation ---------------------------------------------------------

    def eval(self, x: float) -> float:
        x = float(x)
        if not self.interval.contains(x):
            raise OutOfDomainError(
                f"x={x} outside [{self.interval.a}, {self.interval.b}]"
            )
        if self.kind == STEP:
            # number of breakpoints strictly below x = left-segment index
            idx = int(np.searchsorted(self.breakpoints, x, side="left"))
            return float(self.values[idx])
        return self._eval_linear(x)

    __call__ = eval

    def _eval_linear(self, x: float) -> float:
        t, w = self._knots, self.values
        j = int(np.searchsorted(t, x, side="right")) - 1
        j = min(max(j, 0), t.size - 2)
        if x == t[j]:
            return float(w[j])
        if x == t[j + 1]:
            return float(w[j + 1])
        frac = (x - t[j]) / (t[j + 1] - t[j])
        return float(w[j] + (w[j + 1] - w[j]) * frac)

    def right_limit(self, x: float) -> float:
        """lim u(t) as t -> x from above, for x in [a, b)."""
        x = float(x)
        if not self.interval.a <= x < self.interval.b:
            raise OutOfDomainError(f"right limit needs x in [a, b), got {x}")
        if self.kind == LINEAR:
            return self._eval_linear(x)
        idx = int(np.searchsorted(self.breakpoints, x, side="right"))
        return float(self.values[idx])

    def eval_many(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.float64)
        if xs.size and (xs.min() < self.interval.a or xs.max() > self.interval.b):
            raise OutOfDomainError("query points outside the interval")
        if self.kind == STEP:
            idx = np.searchsorted(self.breakpoints, xs, side="left")
            return self.values[idx]
        return np.interp(xs, self._knots, self.values)

    @property
    def jump_points(self) -> np.ndarray:
        """Breakpoints where the function is discontinuous."""
        if self.kind == LINEAR or self.breakpoints.size == 0:
            return np.empty(0)
        jumps = self.values[1:] != self.values[:-1]
        return self.breakpoints[jumps]

    # -- serialization ------------------------------------------------------

    def to_spec_dict(self) -> dict:
        return {
            "interval": [self.interval.a, self.interval.b],
            "kind": self.kind,
            "breakpoints": self.breakpoints.tolist(),
            "values": self.values.tolist(),
        }

    @classmethod
    def from_spec_dict(cls, d: dict) -> "PiecewiseUtility":
        try:
            interval = Interval(*d["interval"])
            return cls(interval, d["kind"], d["breakpoints"], d["values"])
        except (KeyError, TypeError) as exc:
            raise FfsdError(f"malformed utility spec: {exc}") from exc


def load_utility_json(path: str) -> PiecewiseUtility:
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FfsdError(f"invalid json in {path}: {exc}") from exc
    return PiecewiseUtility.from_spec_dict(d)


def exact_indicator(x0: float, interval: Interval) -> PiecewiseUtility:
    """The step utility equal to the indicator with threshold x0."""
    if not interval.interior_contains(x0):
        raise OutOfDomainError(f"x0={x0} not in the open interval")
    return PiecewiseUtility(interval, STEP, [x0], [0.0, 1.0])


def witness_utility(x0: float, eps2: float, interval: Interval) -> PiecewiseUtility:
    """Step utility with values eps2/2 below x0 and 1 - eps2/2 above.

    Its sup-distance to the indicator at x0 is exactly eps2/2, so it is
    eps2-close but never exact; this is the decision-complete witness family
    used by the equivalence-theorem checks.
    """
    if not interval.interior_contains(x0):
        raise OutOfDomainError(f"x0={x0} not in the open interval")
    if eps2 >= CRITICAL_EPS:
        raise ToleranceTooLargeError(f"eps2={eps2} must be < 1/2")
    if eps2 <= 0:
        raise FfsdError("witness utility needs eps2 > 0")
    return PiecewiseUtility(interval, STEP, [x0], [eps2 / 2, 1.0 - eps2 / 2])


# -- sup-distance (exact, closed form) --------------------------------------


def sup_distance_to_indicator(u: PiecewiseUtility, x0: float) -> float:
    """sup over [a, b] of |u(x) - indicator(x0, x)|, computed exactly.

    Splits into max(sup over [a, x0] of |u|, sup over (x0, b] of |u - 1|);
    the right limit of u at x0 participates in the second piece.
    """
    x0 = float(x0)
    if not u.interval.interior_contains(x0):
        raise OutOfDomainError(f"x0={x0} not in the open interval")
    return max(_sup_abs_left(u, x0), _sup_abs_right(u, x0))


def _sup_abs_left(u: PiecewiseUtility, x0: float) -> float:
    """sup of |u| over [a, x0]."""
    if u.kind == STEP:
        # segments intersecting [a, x0]: indices 0 .. #breakpoints < x0,
        # plus the value at x0 itself, which is values[#bp < x0] already.
        hi = int(np.searchsorted(u.breakpoints, x0, side="left"))
        return float(np.max(np.abs(u.values[: hi + 1])))
    t, w = u._knots, u.values
    best = 0.0
    for j in range(t.size - 1):
        if t[j] >= x0:
            break
        left = abs(w[j])
        right_x = min(float(t[j + 1]), x0)
        right = abs(u._eval_linear(right_x))
        best = max(best, left, right)
    return best


def _sup_abs_right(u: PiecewiseUtility, x0: float) -> float:
    """sup of |u - 1| over (x0, b], including the right limit at x0."""
    if u.kind == STEP:
        lo = int(np.searchsorted(u.breakpoints, x0, side="right"))
        return float(np.max(np.abs(u.values[lo:] - 1.0)))
    t, w = u._knots, u.values
    best = abs(u._eval_linear(x0) - 1.0)  # continuity: right limit = value
    for j in range(t.size - 1):
        if t[j + 1] <= x0:
            continue
        left_x = max(float(t[j]), x0)
        best = max(best, abs(u._eval_linear(left_x) - 1.0), abs(w[j + 1] - 1.0))
    return best


# -- classification ----------------------------------------------------------


def feasible_references(u: PiecewiseUtility, eps: float) -> list[tuple[float, float]]:
    """All (x0, sup_distance) pairs with sup_distance <= eps, eps < 1/2.

    For eps < 1/2 a feasible reference forces u into disjoint value bands on
    either side, so only jump discontinuities (breakpoints) can qualify.
    """
    out = []
    for bp in u.breakpoints:
        d = sup_distance_to_indicator(u, float(bp))
        if d <= eps:
            out.append((float(bp), d))
    return out


def find_exact_reference(u: PiecewiseUtility) -> float | None:
    """The x0 with sup-distance exactly 0, if any."""
    for bp in u.breakpoints:
        if sup_distance_to_indicator(u, float(bp)) == 0.0:
            return float(bp)
    return None


def classify_indicator(u: PiecewiseUtility, eps: float) -> IndicatorClass:
    """Exact(x0) | Approx(x0) | Neither, for 0 <= eps < 1/2.

    Raises ToleranceTooLargeError at eps >= 1/2 (the ill-defined region) and
    UniquenessViolationError if the breakpoint scan ever finds two feasible
    references, which the uniqueness lemma rules out.
    """
    eps = float(eps)
    if eps < 0:
        raise FfsdError(f"eps must be nonnegative, got {eps}")
    if eps >= CRITICAL_EPS:
        raise ToleranceTooLargeError(
            f"eps={eps} is not below the critical threshold 1/2"
        )
    feasible = feasible_references(u, eps)
    if len(feasible) > 1:
        raise UniquenessViolationError(
            f"multiple feasible references {feasible} at eps={eps} < 1/2"
        )
    if not feasible:
        return IndicatorClass(MatchKind.NEITHER)
    x0, d = feasible[0]
    if d == 0.0:
        return IndicatorClass(MatchKind.EXACT, x0, 0.0)
    return IndicatorClass(MatchKind.APPROX, x0, d)
