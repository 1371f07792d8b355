"""n-dimensional machinery: vector relations, rectangles, survival
probabilities by inclusion-exclusion, orthant utilities, the n-D robust
integral, and survival-based dominance with tolerance.

Joint distributions are finite weighted point sets; their survival
functions are piecewise constant in the reference point, so dominance over
the whole open rectangle is decided exactly on a shifted-coordinate
candidate grid. Arbitrary CDF evaluators are supported too, but verdicts
for them are only certificates over the supplied candidates.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from . import kernels
from .dominance import MARGIN_SLACK, TheoremReport, _validate_tolerance_pair
from .errors import (
    CandidateCapError,
    CandidateSetEmptyError,
    DimensionCapError,
    DimensionMismatchError,
    FfsdError,
    IndexOutOfRangeError,
    IntervalMismatchError,
    OutOfDomainError,
    ToleranceTooLargeError,
    UniquenessViolationError,
)
from .integral import RsiCase, RsiResult
from .utility import CRITICAL_EPS, IndicatorClass, MatchKind

DEFAULT_DIM_CAP = 16
DEFAULT_CANDIDATE_CAP = 100_000
WEIGHT_TOL = 1e-12

CdfEvaluator = Callable[[np.ndarray], float]


def _dim_cap(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    return int(os.environ.get("FFSD_DIM_CAP", DEFAULT_DIM_CAP))


def _as_vector(x, name: str = "vector") -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64).reshape(-1)
    if arr.size < 1:
        raise DimensionMismatchError(f"{name} must have at least one component")
    return arr


def all_gt(x, y) -> bool:
    """True iff x_i > y_i for every coordinate (strict in all components)."""
    xa, ya = _as_vector(x, "x"), _as_vector(y, "y")
    if xa.size != ya.size:
        raise DimensionMismatchError(f"dimensions differ: {xa.size} vs {ya.size}")
    return bool(np.all(xa > ya))


def mixed_vector(x0, b, S: Iterable[int]) -> np.ndarray:
    """Component i of the result is x0_i when i is in S, else b_i."""
    x0a, ba = _as_vector(x0, "x0"), _as_vector(b, "b")
    if x0a.size != ba.size:
        raise DimensionMismatchError(f"dimensions differ: {x0a.size} vs {ba.size}")
    out = ba.copy()
    for i in S:
        i = int(i)
        if i < 0 or i >= ba.size:
            raise IndexOutOfRangeError(f"index {i} outside 0..{ba.size - 1}")
        out[i] = x0a[i]
    return out


@dataclass(frozen=True, eq=False)
class Rectangle:
    """Axis-aligned box with strictly positive side lengths."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = _as_vector(self.lower, "lower")
        hi = _as_vector(self.upper, "upper")
        if lo.size != hi.size:
            raise DimensionMismatchError("lower and upper dimensions differ")
        if not np.all(lo < hi):
            raise FfsdError("rectangle requires lower < upper componentwise")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def n(self) -> int:
        return self.lower.size

    @property
    def volume(self) -> float:
        return float(np.prod(self.upper - self.lower))

    def contains(self, x) -> bool:
        xa = _as_vector(x)
        return bool(np.all(xa >= self.lower) and np.all(xa <= self.upper))

    def interior_contains(self, x) -> bool:
        xa = _as_vector(x)
        return bool(np.all(xa > self.lower) and np.all(xa < self.upper))


def volume_n(rect: Rectangle) -> float:
    """Product of side lengths; the n-D analogue of (b - a)."""
    return rect.volume


@dataclass(eq=False)
class DiscreteJointDist:
    """Finite weighted point set; the induced joint CDF is exact.

    Points must lie strictly above the lower corner (and at most at the
    upper corner) so that mixed vectors using upper-corner coordinates pick
    up full marginal mass, keeping the inclusion-exclusion identity exact.
    """

    points: np.ndarray
    weights: np.ndarray
    rect: Rectangle

    def __post_init__(self):
        pts = np.ascontiguousarray(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        w = np.ascontiguousarray(self.weights, dtype=np.float64).reshape(-1)
        if pts.shape[0] != w.size:
            raise FfsdError("points and weights must have matching lengths")
        if pts.shape[0] == 0:
            raise FfsdError("a joint distribution needs at least one point")
        if pts.shape[1] != self.rect.n:
            raise DimensionMismatchError(
                f"points are {pts.shape[1]}-dimensional, rectangle is {self.rect.n}"
            )
        if np.any(pts <= self.rect.lower) or np.any(pts > self.rect.upper):
            raise OutOfDomainError(
                "every point must satisfy lower < p <= upper componentwise"
            )
        if np.any(w <= 0):
            raise FfsdError("weights must be strictly positive")
        total = float(w.sum())
        if abs(total - 1.0) > WEIGHT_TOL:
            raise FfsdError(f"weights must sum to 1 within {WEIGHT_TOL}, got {total}")
        w = w / total
        pts.setflags(write=False)
        w.setflags(write=False)
        self.points = pts
        self.weights = w

    @property
    def n(self) -> int:
        return self.points.shape[1]

    def cdf(self, x) -> float:
        """P(X <= x componentwise)."""
        return joint_cdf_eval(self, x)

    def to_spec_dict(self) -> dict:
        return {
            "rect": {
                "lower": self.rect.lower.tolist(),
                "upper": self.rect.upper.tolist(),
            },
            "points": self.points.tolist(),
            "weights": self.weights.tolist(),
        }

    @classmethod
    def from_spec_dict(cls, d: dict) -> "DiscreteJointDist":
        try:
            rect = Rectangle(d["rect"]["lower"], d["rect"]["upper"])
            return cls(np.asarray(d["points"], dtype=np.float64), d["weights"], rect)
        except (KeyError, TypeError) as exc:
            raise FfsdError(f"malformed joint distribution spec: {exc}") from exc


def load_joint_json(path: str) -> DiscreteJointDist:
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FfsdError(f"invalid json in {path}: {exc}") from exc
    return DiscreteJointDist.from_spec_dict(d)


def joint_cdf_eval(D: DiscreteJointDist, x) -> float:
    """Sum of weights of points p with p <= x in every coordinate."""
    xa = _as_vector(x)
    if xa.size != D.n:
        raise DimensionMismatchError(f"query is {xa.size}-D, dist is {D.n}-D")
    inside = np.all(D.points <= xa, axis=1)
    return float(D.weights[inside].sum())


def survival_direct(D: DiscreteJointDist, x0) -> float:
    """Brute-force oracle: total weight of points strictly above x0 in
    every coordinate. Shares no code with the inclusion-exclusion path."""
    x0a = _as_vector(x0)
    if x0a.size != D.n:
        raise DimensionMismatchError(f"x0 is {x0a.size}-D, dist is {D.n}-D")
    above = np.all(D.points > x0a, axis=1)
    return float(D.weights[above].sum())


def survival_prob(
    F: Union[DiscreteJointDist, CdfEvaluator],
    x0,
    b=None,
    dim_cap: int | None = None,
) -> float:
    """P(X >> x0) via inclusion-exclusion over mixed vectors, clamped to [0, 1].

    F is a joint-CDF evaluator (callable on one vector) or a
    DiscreteJointDist, in which case b defaults to its upper corner and the
    batched kernel backend is used. Enumerates all 2^n - 1 non-empty subsets
    in ascending binary order; dimensions above the cap (default 16,
    override with FFSD_DIM_CAP or the dim_cap argument) are rejected.
    """
    x0a = _as_vector(x0, "x0")
    if isinstance(F, DiscreteJointDist):
        if b is None:
            b = F.rect.upper
        ba = _as_vector(b, "b")
        if x0a.size != F.n or ba.size != F.n:
            raise DimensionMismatchError("x0/b dimensions do not match the dist")
        _check_dim_cap(x0a.size, dim_cap)
        raw = float(
            kernels.survival_ie_batch(
                F.points, F.weights, x0a.reshape(1, -1), ba
            )[0]
        )
        return min(1.0, max(0.0, raw))
    if b is None:
        raise FfsdError("b (upper corner) is required for a callable evaluator")
    ba = _as_vector(b, "b")
    if ba.size != x0a.size:
        raise DimensionMismatchError("x0 and b dimensions differ")
    n = x0a.size
    _check_dim_cap(n, dim_cap)
    total = 0.0
    for mask in range(1, 1 << n):
        subset = [i for i in range(n) if (mask >> i) & 1]
        sign = 1.0 if len(subset) % 2 == 1 else -1.0
        total += sign * float(F(mixed_vector(x0a, ba, subset)))
    return min(1.0, max(0.0, 1.0 - total))


def _check_dim_cap(n: int, dim_cap: int | None) -> None:
    cap = _dim_cap(dim_cap)
    if n > cap:
        raise DimensionCapError(
            f"dimension {n} exceeds the subset-enumeration cap {cap}"
        )


def _survival_batch(D: DiscreteJointDist, x0s: np.ndarray) -> np.ndarray:
    """Clamped survival probabilities for a whole candidate block."""
    raw = kernels.survival_ie_batch(D.points, D.weights, x0s, D.rect.upper)
    return np.clip(raw, 0.0, 1.0)


# -- orthant utilities and the n-D robust integral ---------------------------


@dataclass(eq=False)
class OrthantUtility:
    """u(x) = hi on the open upper-right orthant of the reference, lo elsewhere.

    The exact orthant indicator is hi=1, lo=0.
    """

    reference: np.ndarray
    hi: float
    lo: float
    rect: Rectangle

    def __post_init__(self):
        ref = _as_vector(self.reference, "reference")
        if ref.size != self.rect.n:
            raise DimensionMismatchError("reference dimension does not match rect")
        if not self.rect.interior_contains(ref):
            raise OutOfDomainError("reference must lie in the open rectangle")
        ref.setflags(write=False)
        self.reference = ref
        self.hi = float(self.hi)
        self.lo = float(self.lo)

    def __call__(self, x) -> float:
        return self.hi if all_gt(x, self.reference) else self.lo


def orthant_indicator(x0, x) -> float:
    """1 if x >> x0, else 0."""
    return 1.0 if all_gt(x, x0) else 0.0


def classify_orthant_indicator(
    u: Union[OrthantUtility, Callable[[np.ndarray], float]],
    eps: float,
    grid: Sequence | None = None,
    rect: Rectangle | None = None,
) -> IndicatorClass:
    """Classify u against the orthant-indicator predicates at eps < 1/2.

    OrthantUtility values are classified exactly (their own reference is the
    only possible one below the critical threshold). Arbitrary callables are
    checked over the supplied finite grid and flagged grid_certified: a
    certificate over the grid, not over all of [a, b].
    """
    eps = float(eps)
    if eps < 0:
        raise FfsdError(f"eps must be nonnegative, got {eps}")
    if eps >= CRITICAL_EPS:
        raise ToleranceTooLargeError(
            f"eps={eps} is not below the critical threshold 1/2"
        )
    if isinstance(u, OrthantUtility):
        if u.hi == 1.0 and u.lo == 0.0:
            return IndicatorClass(MatchKind.EXACT, u.reference, 0.0)
        d = max(abs(u.lo), abs(u.hi - 1.0))
        if d <= eps:
            return IndicatorClass(MatchKind.APPROX, u.reference, d)
        return IndicatorClass(MatchKind.NEITHER)
    if grid is None:
        raise FfsdError("a finite grid is required to classify a callable")
    pts = np.atleast_2d(np.asarray(list(grid), dtype=np.float64))
    if pts.shape[0] == 0:
        raise FfsdError("classification grid must be non-empty")
    box = rect
    if box is None:
        raise FfsdError("rect is required to classify a callable")
    vals = np.array([float(u(p)) for p in pts])
    interior = [
        i for i in range(pts.shape[0]) if box.interior_contains(pts[i])
    ]
    feasible: list[tuple[np.ndarray, float, np.ndarray]] = []
    for i in interior:
        ref = pts[i]
        labels = np.all(pts > ref, axis=1).astype(np.float64)
        d = float(np.max(np.abs(vals - labels)))
        if d <= eps:
            feasible.append((ref, d, labels))
    if not feasible:
        return IndicatorClass(MatchKind.NEITHER, grid_certified=True)
    first_labels = feasible[0][2]
    for _, _, labels in feasible[1:]:
        if not np.array_equal(labels, first_labels):
            raise UniquenessViolationError(
                "feasible references with distinct grid labelings found; "
                "this contradicts uniqueness below eps = 1/2"
            )
    ref, d, _ = min(feasible, key=lambda item: tuple(item[0]))
    kind = MatchKind.EXACT if d == 0.0 else MatchKind.APPROX
    return IndicatorClass(kind, ref, d, grid_certified=True)


def rsi_nd(
    u: Union[OrthantUtility, Callable[[np.ndarray], float]],
    F: Union[DiscreteJointDist, CdfEvaluator],
    rect: Rectangle,
    eps: float,
    grid: Sequence | None = None,
    dim_cap: int | None = None,
) -> RsiResult:
    """n-D robust integral: survival at the reference, plus eps * volume in
    the approximate case, 0 in the fallback case."""
    eps = float(eps)
    if eps < 0:
        raise FfsdError(f"eps must be nonnegative, got {eps}")
    exact_ref = None
    if isinstance(u, OrthantUtility):
        if u.hi == 1.0 and u.lo == 0.0:
            exact_ref = u.reference
    elif grid is not None:
        probe = classify_orthant_indicator(u, 0.0, grid=grid, rect=rect)
        if probe.is_exact:
            exact_ref = probe.reference
    else:
        raise FfsdError("a finite grid is required to integrate a callable")
    if exact_ref is not None:
        value = survival_prob(F, exact_ref, rect.upper, dim_cap=dim_cap)
        return RsiResult(value, RsiCase.EXACT, exact_ref, 0.0)
    if eps >= CRITICAL_EPS:
        raise ToleranceTooLargeError(
            f"eps={eps} >= 1/2: approximate classification is ill-defined"
        )
    verdict = classify_orthant_indicator(u, eps, grid=grid, rect=rect)
    if verdict.variant is MatchKind.APPROX and eps > 0:
        adjustment = eps * rect.volume
        ref = np.asarray(verdict.reference, dtype=np.float64)
        value = survival_prob(F, ref, rect.upper, dim_cap=dim_cap) + adjustment
        return RsiResult(value, RsiCase.APPROX, ref, adjustment)
    return RsiResult(0.0, RsiCase.FALLBACK, None, 0.0)


# -- dominance over survival functions ----------------------------------------


@dataclass(eq=False)
class NffsdVerdict:
    """Survival-dominance verdict over a candidate set.

    worst_margin = min over candidates of survival_F - survival_G; the
    relation holds when worst_margin >= -eps_surv. grid_certified marks
    verdicts whose candidate set was user-supplied (or whose inputs were
    non-discrete), i.e. certificates over the candidates only.
    """

    holds: bool
    eps_surv: float
    worst_margin: float
    worst_x0: np.ndarray
    n_candidates: int
    grid_certified: bool

    def to_report(self) -> dict:
        return {
            "holds": self.holds,
            "epsilon": self.eps_surv,
            "worst_margin": self.worst_margin,
            "worst_x0": self.worst_x0.tolist(),
            "n_candidates": self.n_candidates,
            "grid_certified": self.grid_certified,
        }


def default_candidates(
    F: DiscreteJointDist,
    G: DiscreteJointDist,
    cap: int = DEFAULT_CANDIDATE_CAP,
) -> np.ndarray:
    """Cross product of per-dimension distinct point coordinates shifted by
    +-delta (half the minimal per-dimension gap, boundaries included).

    The survival functions of discrete distributions are piecewise constant
    with breaks at point coordinates, so this grid hits every plateau and
    decides the open-rectangle quantifier exactly.
    """
    rect = F.rect
    axes: list[np.ndarray] = []
    count = 1
    for i in range(rect.n):
        coords = np.unique(
            np.concatenate([F.points[:, i], G.points[:, i]])
        )
        fenced = np.concatenate(([rect.lower[i]], coords, [rect.upper[i]]))
        gaps = np.diff(fenced)
        delta = 0.5 * float(np.min(gaps[gaps > 0]))
        axis = np.unique(np.concatenate([coords - delta, coords + delta]))
        axis = axis[(axis > rect.lower[i]) & (axis < rect.upper[i])]
        if axis.size == 0:
            axis = np.array([0.5 * (rect.lower[i] + rect.upper[i])])
        axes.append(axis)
        count *= axis.size
        if count > cap:
            raise CandidateCapError(
                f"candidate grid would exceed the cap of {cap} points"
            )
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def _survival_margins(
    F: Union[DiscreteJointDist, CdfEvaluator],
    G: Union[DiscreteJointDist, CdfEvaluator],
    rect: Rectangle,
    x0_candidates: Sequence | None,
    cap: int = DEFAULT_CANDIDATE_CAP,
    dim_cap: int | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, bool]:
    """Candidates, survival_F, survival_G, grid_certified flag."""
    discrete = isinstance(F, DiscreteJointDist) and isinstance(G, DiscreteJointDist)
    for dist in (F, G):
        if isinstance(dist, DiscreteJointDist) and not (
            np.array_equal(dist.rect.lower, rect.lower)
            and np.array_equal(dist.rect.upper, rect.upper)
        ):
            raise IntervalMismatchError(
                "distribution rectangle does not match the ambient rectangle"
            )
    if x0_candidates is None:
        if not discrete:
            raise CandidateSetEmptyError(
                "candidates are required for non-discrete evaluators"
            )
        cands = default_candidates(F, G, cap=cap)
        certified = False
    else:
        cands = np.atleast_2d(np.asarray(x0_candidates, dtype=np.float64))
        if cands.size == 0:
            raise CandidateSetEmptyError("empty candidate set")
        if cands.shape[0] > cap:
            raise CandidateCapError(
                f"{cands.shape[0]} candidates exceed the cap of {cap}"
            )
        certified = True
    if cands.shape[1] != rect.n:
        raise DimensionMismatchError("candidate dimension does not match rect")
    if np.any(cands <= rect.lower) or np.any(cands >= rect.upper):
        raise OutOfDomainError("candidates must lie in the open rectangle")
    _check_dim_cap(rect.n, dim_cap)
    if discrete:
        s_f = _survival_batch(F, cands)
        s_g = _survival_batch(G, cands)
    else:
        s_f = np.array(
            [survival_prob(F, c, rect.upper, dim_cap=dim_cap) for c in cands]
        )
        s_g = np.array(
            [survival_prob(G, c, rect.upper, dim_cap=dim_cap) for c in cands]
        )
    return cands, s_f, s_g, certified


def check_nffsd(
    F: Union[DiscreteJointDist, CdfEvaluator],
    G: Union[DiscreteJointDist, CdfEvaluator],
    rect: Rectangle,
    eps_surv: float,
    x0_candidates: Sequence | None = None,
    cap: int = DEFAULT_CANDIDATE_CAP,
    dim_cap: int | None = None,
) -> NffsdVerdict:
    """Does survival_F(x0) >= survival_G(x0) - eps_surv hold at every
    candidate reference point?"""
    eps_surv = float(eps_surv)
    if eps_surv < 0:
        raise FfsdError(f"eps_surv must be nonnegative, got {eps_surv}")
    cands, s_f, s_g, certified = _survival_margins(
        F, G, rect, x0_candidates, cap=cap, dim_cap=dim_cap
    )
    margins = s_f - s_g
    worst = int(np.argmin(margins))
    return NffsdVerdict(
        holds=bool(margins[worst] >= -eps_surv),
        eps_surv=eps_surv,
        worst_margin=float(margins[worst]),
        worst_x0=cands[worst],
        n_candidates=cands.shape[0],
        grid_certified=certified,
    )


def min_epsilon_nffsd(
    F: Union[DiscreteJointDist, CdfEvaluator],
    G: Union[DiscreteJointDist, CdfEvaluator],
    rect: Rectangle,
    x0_candidates: Sequence | None = None,
    cap: int = DEFAULT_CANDIDATE_CAP,
    dim_cap: int | None = None,
) -> float:
    """Least eps_surv making the survival-dominance relation hold."""
    _, s_f, s_g, _ = _survival_margins(
        F, G, rect, x0_candidates, cap=cap, dim_cap=dim_cap
    )
    return max(0.0, float(np.max(s_g - s_f)))


def check_equivalence_theorem_nd(
    F: Union[DiscreteJointDist, CdfEvaluator],
    G: Union[DiscreteJointDist, CdfEvaluator],
    rect: Rectangle,
    eps1: float,
    eps2: float,
    x0_candidates: Sequence | None = None,
    cap: int = DEFAULT_CANDIDATE_CAP,
    dim_cap: int | None = None,
    spot_checks: int = 3,
) -> TheoremReport:
    """Two-directional check of the n-D dominance/expected-utility
    equivalence with eps_surv = (eps1 - eps2) * volume.

    Witnesses are orthant utilities with values eps2/2 and 1 - eps2/2 at
    each candidate; their integral margins are computed from the batched
    survival values and cross-checked against the real rsi_nd code path on
    a few sampled candidates (1e-12 agreement enforced).
    """
    eps1 = float(eps1)
    eps2 = float(eps2)
    _validate_tolerance_pair(eps1, eps2)
    eps_surv = (eps1 - eps2) * rect.volume
    cands, s_f, s_g, _ = _survival_margins(
        F, G, rect, x0_candidates, cap=cap, dim_cap=dim_cap
    )
    gap = s_f - s_g
    holds_lhs = bool(np.min(gap) >= -eps_surv)
    max_violation = max(0.0, float(np.max(s_g - s_f)))
    margins = (s_f + eps1 * rect.volume) - (s_g + eps2 * rect.volume)
    idx = np.linspace(0, cands.shape[0] - 1, min(spot_checks, cands.shape[0]))
    for i in np.unique(idx.astype(int)):
        w = OrthantUtility(cands[i], 1.0 - eps2 / 2, eps2 / 2, rect)
        got = (
            rsi_nd(w, F, rect, eps1, dim_cap=dim_cap).value
            - rsi_nd(w, G, rect, eps2, dim_cap=dim_cap).value
        )
        if abs(got - margins[i]) > 1e-12:
            raise FfsdError(
                f"batched margin {margins[i]!r} disagrees with rsi_nd {got!r}"
            )
    min_margin = float(np.min(margins))
    holds_rhs = bool(min_margin >= -MARGIN_SLACK)
    forward_ok = (not holds_lhs) or holds_rhs
    if holds_lhs:
        backward_ok = True
        backward_violation = None
    else:
        backward_violation = -min_margin
        backward_ok = bool(
            backward_violation >= max_violation - eps_surv - MARGIN_SLACK
        )
    worst = int(np.argmin(margins))
    return TheoremReport(
        holds_lhs=holds_lhs,
        holds_rhs=holds_rhs,
        epsilon=eps_surv,
        epsilon_out_of_range=bool(eps_surv >= 1.0),
        max_violation=max_violation,
        x0s=cands,
        margins=margins,
        min_margin=min_margin,
        n_utilities=cands.shape[0],
        forward_ok=bool(forward_ok),
        backward_ok=backward_ok,
        backward_violation=backward_violation,
    )
