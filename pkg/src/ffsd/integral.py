"""Three-case robust Riemann-Stieltjes integral for (approximate) indicators.

Case order follows the defining nested conditional: exact indicators first
(value 1 - F(x0), tolerance argument inert), then eps-close indicators with
the additive adjustment eps * (b - a), then the literal fallback 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from .distributions import PiecewiseCdf
from .errors import FfsdError, IntervalMismatchError, ToleranceTooLargeError
from .utility import (
    CRITICAL_EPS,
    MatchKind,
    PiecewiseUtility,
    classify_indicator,
    find_exact_reference,
)


class RsiCase(Enum):
    EXACT = "exact"
    APPROX = "approx"
    FALLBACK = "fallback"


@dataclass(frozen=True, eq=False)
class RsiResult:
    """Value plus the branch that produced it.

    tolerance_adjustment is eps * (b - a) in the approximate case (in n
    dimensions, eps * volume) and 0 otherwise.
    """

    value: float
    case: RsiCase
    reference: Union[float, np.ndarray, None]
    tolerance_adjustment: float

    def to_report(self) -> dict:
        ref = self.reference
        if isinstance(ref, np.ndarray):
            ref = ref.tolist()
        return {
            "value": self.value,
            "case": self.case.value,
            "reference": ref,
            "tolerance_adjustment": self.tolerance_adjustment,
        }


def rsi(u: PiecewiseUtility, F: PiecewiseCdf, eps: float) -> RsiResult:
    """Robust integral of u against F over their shared interval.

    Exact indicator at x0 -> 1 - F(x0) for any eps >= 0. Otherwise requires
    eps < 1/2; an eps-close indicator with eps > 0 gets the tolerance
    adjustment, anything else falls back to 0.
    """
    if u.interval != F.interval:
        raise IntervalMismatchError(
            f"utility on [{u.interval.a}, {u.interval.b}] vs cdf on "
            f"[{F.interval.a}, {F.interval.b}]"
        )
    eps = float(eps)
    if eps < 0:
        raise FfsdError(f"eps must be nonnegative, got {eps}")
    x0 = find_exact_reference(u)
    if x0 is not None:
        return RsiResult(1.0 - F.eval(x0), RsiCase.EXACT, x0, 0.0)
    if eps >= CRITICAL_EPS:
        raise ToleranceTooLargeError(
            f"eps={eps} >= 1/2: approximate classification is ill-defined"
        )
    verdict = classify_indicator(u, eps)
    if verdict.variant is MatchKind.APPROX and eps > 0:
        adjustment = eps * u.interval.width
        x0 = float(verdict.reference)
        return RsiResult((1.0 - F.eval(x0)) + adjustment, RsiCase.APPROX, x0, adjustment)
    return RsiResult(0.0, RsiCase.FALLBACK, None, 0.0)
