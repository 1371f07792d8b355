"""Exact 1-D cumulative distribution functions on a bounded interval.

A PiecewiseCdf is either a right-continuous step function (empirical CDFs,
discrete distributions) or a continuous piecewise-linear ramp. Both kinds
pin F(a) = 0 and F(b) = 1 exactly; downstream dominance and integral code
relies on those boundary values being hard constraints.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    EmptySampleError,
    FfsdError,
    OutOfDomainError,
    SampleOutOfRangeError,
)

BOUNDARY_TOL = 1e-12  # slack allowed on F(b)=1 at construction before snapping

STEP = "step"
LINEAR = "linear"


@dataclass(frozen=True)
class Interval:
    """Closed interval [a, b] with a < b strictly."""

    a: float
    b: float

    def __post_init__(self):
        a = float(self.a)
        b = float(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if not a < b:
            raise FfsdError(f"interval requires a < b, got [{a}, {b}]")

    @property
    def width(self) -> float:
        return self.b - self.a

    def contains(self, x: float) -> bool:
        return self.a <= x <= self.b

    def interior_contains(self, x: float) -> bool:
        return self.a < x < self.b


@dataclass(eq=False)
class PiecewiseCdf:
    """CDF on [a, b], exact at breakpoints.

    kind="step": right-continuous; ``values[i]`` is the CDF level on
    ``[breakpoints[i], breakpoints[i+1])``. Level is 0 before the first
    breakpoint. Breakpoints lie in (a, b]; the final level must be 1
    (within 1e-12 at construction, snapped to exactly 1).

    kind="linear": continuous; ``values[i]`` is the CDF value at
    ``breakpoints[i]`` and segments interpolate between the implicit
    endpoint nodes (a, 0) and (b, 1). Breakpoints lie in (a, b).
    """

    interval: Interval
    kind: str
    breakpoints: np.ndarray
    values: np.ndarray
    _knots: np.ndarray = field(init=False, repr=False)
    _knot_vals: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.kind not in (STEP, LINEAR):
            raise FfsdError(f"unknown cdf kind {self.kind!r}")
        bp = np.asarray(self.breakpoints, dtype=np.float64).reshape(-1)
        v = np.asarray(self.values, dtype=np.float64).reshape(-1)
        if bp.size != v.size:
            raise FfsdError("breakpoints and values must have equal length")
        if bp.size and not np.all(np.diff(bp) > 0):
            raise FfsdError("breakpoints must be strictly increasing")
        a, b = self.interval.a, self.interval.b
        if self.kind == STEP:
            if bp.size == 0:
                raise FfsdError("a step cdf needs at least one breakpoint")
            if bp[0] <= a or bp[-1] > b:
                raise FfsdError("step breakpoints must lie in (a, b]")
            if abs(v[-1] - 1.0) > BOUNDARY_TOL:
                raise FfsdError(
                    f"step cdf must reach 1 at its last breakpoint, got {v[-1]!r}"
                )
            v = v.copy()
            v[-1] = 1.0
        else:
            if bp.size and (bp[0] <= a or bp[-1] >= b):
                raise FfsdError("linear breakpoints must lie in (a, b)")
        if np.any(v < -BOUNDARY_TOL) or np.any(v > 1.0 + BOUNDARY_TOL):
            raise FfsdError("cdf values must lie in [0, 1]")
        v = np.clip(v, 0.0, 1.0)
        if v.size and np.any(np.diff(v) < 0):
            raise FfsdError("cdf values must be nondecreasing")
        bp.setflags(write=False)
        v.setflags(write=False)
        self.breakpoints = bp
        self.values = v
        if self.kind == LINEAR:
            knots = np.concatenate(([a], bp, [b]))
            knot_vals = np.concatenate(([0.0], v, [1.0]))
        else:
            # prepend the zero level so searchsorted indexes levels directly
            knots = bp
            knot_vals = np.concatenate(([0.0], v))
        knots.setflags(write=False)
        knot_vals.setflags(write=False)
        self._knots = knots
        self._knot_vals = knot_vals

    # -- evaluation ---------------------------------------------------------

    def eval(self, x: float) -> float:
        """F(x) for x in [a, b]; right-continuous at step breakpoints."""
        x = float(x)
        if not self.interval.contains(x):
            raise OutOfDomainError(
                f"x={x} outside [{self.interval.a}, {self.interval.b}]"
            )
        if self.kind == STEP:
            idx = int(np.searchsorted(self._knots, x, side="right"))
            return float(self._knot_vals[idx])
        return self._eval_linear(x)

    __call__ = eval

    def _eval_linear(self, x: float) -> float:
        t, w = self._knots, self._knot_vals
        j = int(np.searchsorted(t, x, side="right")) - 1
        j = min(max(j, 0), t.size - 2)
        if x == t[j]:
            return float(w[j])
        if x == t[j + 1]:
            return float(w[j + 1])
        frac = (x - t[j]) / (t[j + 1] - t[j])
        return float(w[j] + (w[j + 1] - w[j]) * frac)

    def left_limit(self, x: float) -> float:
        """lim F(t) as t -> x from below, for x in (a, b]."""
        x = float(x)
        if not self.interval.a < x <= self.interval.b:
            raise OutOfDomainError(f"left limit needs x in (a, b], got {x}")
        if self.kind == LINEAR:
            return self._eval_linear(x)
        idx = int(np.searchsorted(self._knots, x, side="left"))
        return float(self._knot_vals[idx])

    def eval_many(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized eval; used by grid oracles and sweeps."""
        xs = np.asarray(xs, dtype=np.float64)
        if xs.size and (xs.min() < self.interval.a or xs.max() > self.interval.b):
            raise OutOfDomainError("query points outside the interval")
        if self.kind == STEP:
            idx = np.searchsorted(self._knots, xs, side="right")
            return self._knot_vals[idx]
        return np.interp(xs, self._knots, self._knot_vals)

    # -- serialization ------------------------------------------------------

    def to_spec_dict(self) -> dict:
        return {
            "interval": [self.interval.a, self.interval.b],
            "kind": self.kind,
            "breakpoints": self.breakpoints.tolist(),
            "values": self.values.tolist(),
        }

    @classmethod
    def from_spec_dict(cls, d: dict) -> "PiecewiseCdf":
        try:
            interval = Interval(*d["interval"])
            return cls(interval, d["kind"], d["breakpoints"], d["values"])
        except (KeyError, TypeError) as exc:
            raise FfsdError(f"malformed piecewise cdf spec: {exc}") from exc


def cdf_eval(F: PiecewiseCdf, x: float) -> float:
    """F(x); raises OutOfDomainError for x outside [a, b]."""
    return F.eval(x)


def from_samples(samples: Sequence[float], interval: Interval) -> PiecewiseCdf:
    """Empirical step CDF F(x) = (#samples <= x) / N.

    Samples must lie in (a, b]: an atom at a would force F(a) > 0, breaking
    the boundary condition that downstream theorems rely on.
    """
    arr = np.asarray(list(samples), dtype=np.float64)
    if arr.size == 0:
        raise EmptySampleError("cannot build an empirical cdf from no samples")
    if np.any(arr <= interval.a) or np.any(arr > interval.b):
        bad = arr[(arr <= interval.a) | (arr > interval.b)][0]
        raise SampleOutOfRangeError(
            f"sample {bad} outside ({interval.a}, {interval.b}]"
        )
    uniq, counts = np.unique(arr, return_counts=True)
    levels = np.cumsum(counts) / arr.size
    return PiecewiseCdf(interval, STEP, uniq, levels)


def uniform_cdf(interval: Interval) -> PiecewiseCdf:
    """F(x) = (x - a) / (b - a): a single linear ramp."""
    return PiecewiseCdf(interval, LINEAR, [], [])


def load_samples_csv(path: str) -> list[float]:
    """One real per line; an optional leading header cell named 'value'."""
    out: list[float] = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or not row[0].strip():
                continue
            cell = row[0].strip()
            if not out and cell.lower() == "value":
                continue
            try:
                out.append(float(cell))
            except ValueError as exc:
                raise FfsdError(f"bad sample line {cell!r} in {path}") from exc
    return out


def load_cdf_json(path: str) -> PiecewiseCdf:
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FfsdError(f"invalid json in {path}: {exc}") from exc
    return PiecewiseCdf.from_spec_dict(d)
