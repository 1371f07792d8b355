"""Seeded randomized suites that exercise the lemma- and theorem-shaped
claims at desk scale, plus the instance generators they draw from.

Each driver returns a JSON-serializable report; identical seed and options
produce identical reports. The CLI surfaces these as verify-1d / verify-nd.
"""

from __future__ import annotations

import numpy as np

from .distributions import Interval, PiecewiseCdf
from .dominance import check_equivalence_theorem, random_band_utility
from .integral import RsiCase, rsi
from .multidim import (
    DiscreteJointDist,
    OrthantUtility,
    Rectangle,
    check_equivalence_theorem_nd,
    rsi_nd,
    survival_direct,
    survival_prob,
)
from .oracle import midpoint_contradiction_certificate
from .utility import (
    PiecewiseUtility,
    exact_indicator,
    feasible_references,
    witness_utility,
)

CERT_SLACK = 1e-12  # fp slack on the midpoint certificate sum


# -- random instances ---------------------------------------------------------


def random_interval(rng: np.random.Generator) -> Interval:
    a = rng.uniform(-5.0, 5.0)
    width = rng.uniform(0.5, 10.0)
    return Interval(a, a + width)


def random_cdf(
    rng: np.random.Generator,
    interval: Interval,
    kind: str | None = None,
    max_breaks: int = 8,
) -> PiecewiseCdf:
    if kind is None:
        kind = "step" if rng.random() < 0.5 else "linear"
    a, b = interval.a, interval.b
    m = int(rng.integers(1, max_breaks + 1))
    if kind == "step":
        atoms = a + (b - a) * (1.0 - rng.random(m))
        # guard the one-ulp rounding overshoot past either endpoint
        atoms = np.unique(np.clip(atoms, np.nextafter(a, b), b))
        raw = rng.random(atoms.size) + 0.05
        levels = np.cumsum(raw) / raw.sum()
        return PiecewiseCdf(interval, "step", atoms, levels)
    breaks = np.unique(rng.uniform(a, b, size=m))
    breaks = breaks[(breaks > a) & (breaks < b)]
    values = np.sort(rng.random(breaks.size))
    return PiecewiseCdf(interval, "linear", breaks, values)


def random_utility(rng: np.random.Generator, interval: Interval) -> PiecewiseUtility:
    """Mixed zoo: arbitrary steps, tolerance-band steps, exact indicators,
    constants, and continuous ramps."""
    a, b = interval.a, interval.b
    roll = rng.random()
    if roll < 0.35:
        m = int(rng.integers(0, 6))
        breaks = np.unique(rng.uniform(a, b, size=m))
        breaks = breaks[(breaks > a) & (breaks < b)]
        values = rng.uniform(-0.5, 1.5, size=breaks.size + 1)
        return PiecewiseUtility(interval, "step", breaks, values)
    if roll < 0.6:
        x0 = rng.uniform(a + 0.05 * (b - a), b - 0.05 * (b - a))
        eps = rng.uniform(0.01, 0.49)
        return random_band_utility(rng, x0, eps, interval)
    if roll < 0.75:
        x0 = rng.uniform(a + 0.05 * (b - a), b - 0.05 * (b - a))
        return exact_indicator(x0, interval)
    if roll < 0.85:
        return PiecewiseUtility(interval, "step", [], [rng.uniform(-0.5, 1.5)])
    m = int(rng.integers(0, 5))
    breaks = np.unique(rng.uniform(a, b, size=m))
    breaks = breaks[(breaks > a) & (breaks < b)]
    values = rng.uniform(-0.5, 1.5, size=breaks.size + 2)
    return PiecewiseUtility(interval, "linear", breaks, values)


def random_rectangle(rng: np.random.Generator, dim: int) -> Rectangle:
    lower = rng.uniform(-2.0, 0.0, size=dim)
    upper = lower + rng.uniform(0.5, 3.0, size=dim)
    return Rectangle(lower, upper)


def random_joint_dist(
    rng: np.random.Generator,
    rect: Rectangle,
    max_points: int = 8,
    min_points: int = 1,
) -> DiscreteJointDist:
    m = int(rng.integers(min_points, max_points + 1))
    span = rect.upper - rect.lower
    # 1 - random() lies in (0, 1]: points stay strictly above the lower corner;
    # the clip guards the one-ulp rounding overshoot past either corner
    pts = rect.lower + span * (1.0 - rng.random((m, rect.n)))
    pts = np.clip(pts, np.nextafter(rect.lower, rect.upper), rect.upper)
    w = rng.random(m) + 0.05
    return DiscreteJointDist(pts, w / w.sum(), rect)


def _tolerance_pair(rng: np.random.Generator) -> tuple[float, float]:
    eps2 = rng.uniform(0.02, 0.3)
    eps1 = rng.uniform(eps2 + 0.01, 0.499)
    return eps1, eps2


# -- 1-D suite ----------------------------------------------------------------


def verify_1d(seed: int, trials: int = 200, uniqueness_factor: int = 10) -> dict:
    """Randomized checks of the 1-D lemmas and the equivalence theorem.

    Runs `trials` theorem instances and `uniqueness_factor * trials`
    uniqueness/certificate instances. pass is True only with zero
    violations everywhere.
    """
    rng = np.random.default_rng(seed)

    uniq_n = trials * uniqueness_factor
    max_feasible = 0
    cert_min_sum = np.inf
    uniq_violations = 0
    for _ in range(uniq_n):
        iv = random_interval(rng)
        u = random_utility(rng, iv)
        eps = rng.uniform(1e-6, 0.5 - 1e-9)
        n_feasible = len(feasible_references(u, eps))
        if n_feasible > 1:
            uniq_violations += 1
        max_feasible = max(max_feasible, n_feasible)
        x1, x2 = rng.uniform(iv.a, iv.b, size=2)
        while x2 == x1:
            x2 = rng.uniform(iv.a, iv.b)
        lo = iv.a + 1e-9 * (iv.b - iv.a)
        hi = iv.b - 1e-9 * (iv.b - iv.a)
        x1, x2 = float(np.clip(x1, lo, hi)), float(np.clip(x2, lo, hi))
        if x1 != x2:
            cert = midpoint_contradiction_certificate(u, x1, x2)
            total = cert.d1_lower + cert.d2_lower
            cert_min_sum = min(cert_min_sum, total)
            if total < 1.0 - CERT_SLACK:
                uniq_violations += 1

    lemma_n = trials
    lemma_max_err = 0.0
    lemma_violations = 0
    shape_mismatches = 0
    for _ in range(lemma_n):
        iv = random_interval(rng)
        F = random_cdf(rng, iv)
        eps = rng.uniform(0.01, 0.49)
        x0 = rng.uniform(iv.a + 0.05 * (iv.b - iv.a), iv.b - 0.05 * (iv.b - iv.a))
        u1 = random_band_utility(rng, x0, eps, iv)
        r1 = rsi(u1, F, eps)
        if r1.case is not RsiCase.APPROX:
            lemma_violations += 1
            continue
        err = abs((r1.value - (1.0 - F.eval(x0))) - eps * iv.width)
        lemma_max_err = max(lemma_max_err, err)
        if err > 1e-12:
            lemma_violations += 1
        u2 = witness_utility(x0, eps, iv)
        if rsi(u2, F, eps).value != r1.value:
            shape_mismatches += 1

    eq_holds = eq_fails = 0
    forward_violations = 0
    backward_failures = 0
    worst_forward_margin = np.inf
    worst_backward_shortfall = np.inf
    eps_flagged = 0
    for trial in range(trials):
        iv = random_interval(rng)
        F = random_cdf(rng, iv)
        G = F if trial % 5 == 0 else random_cdf(rng, iv)
        eps1, eps2 = _tolerance_pair(rng)
        rep = check_equivalence_theorem(F, G, eps1, eps2, rng=rng)
        eps_flagged += int(rep.epsilon_out_of_range)
        if rep.holds_lhs:
            eq_holds += 1
            worst_forward_margin = min(worst_forward_margin, rep.min_margin)
            if not rep.forward_ok:
                forward_violations += 1
        else:
            eq_fails += 1
            shortfall = rep.backward_violation - (
                rep.max_violation - rep.epsilon
            )
            worst_backward_shortfall = min(worst_backward_shortfall, shortfall)
            if not rep.backward_ok:
                backward_failures += 1

    ok = (
        uniq_violations == 0
        and lemma_violations == 0
        and shape_mismatches == 0
        and forward_violations == 0
        and backward_failures == 0
    )
    return {
        "command": "verify-1d",
        "seed": int(seed),
        "trials": int(trials),
        "uniqueness": {
            "instances": uniq_n,
            "max_feasible_set": max_feasible,
            "certificate_min_sum": _finite_or_none(cert_min_sum),
            "violations": uniq_violations,
        },
        "integral_lemma": {
            "instances": lemma_n,
            "max_abs_error": lemma_max_err,
            "violations": lemma_violations,
        },
        "shape_independence": {
            "instances": lemma_n,
            "mismatches": shape_mismatches,
        },
        "equivalence": {
            "instances": trials,
            "holds_count": eq_holds,
            "fails_count": eq_fails,
            "forward_violations": forward_violations,
            "backward_failures": backward_failures,
            "worst_forward_margin": _finite_or_none(worst_forward_margin),
            "worst_backward_shortfall": _finite_or_none(worst_backward_shortfall),
            "epsilon_out_of_range_count": eps_flagged,
        },
        "pass": bool(ok),
    }


# -- n-D suite ----------------------------------------------------------------


def verify_nd(
    seed: int,
    trials: int = 100,
    dim: int = 2,
    max_points: int = 6,
    oracle_max_points: int = 200,
) -> dict:
    """Randomized checks of the inclusion-exclusion identity, the n-D
    integral lemma, and the n-D equivalence theorem at a fixed dimension."""
    rng = np.random.default_rng(seed)

    ie_max_err = 0.0
    ie_violations = 0
    for _ in range(trials):
        rect = random_rectangle(rng, dim)
        D = random_joint_dist(rng, rect, max_points=oracle_max_points)
        x0 = rect.lower + (rect.upper - rect.lower) * rng.uniform(
            0.05, 0.95, size=dim
        )
        err = abs(survival_prob(D, x0) - survival_direct(D, x0))
        ie_max_err = max(ie_max_err, err)
        if err > 1e-9:
            ie_violations += 1

    lemma_max_err = 0.0
    lemma_violations = 0
    for _ in range(trials):
        rect = random_rectangle(rng, dim)
        D = random_joint_dist(rng, rect, max_points=max_points)
        eps = rng.uniform(0.01, 0.49)
        x0 = rect.lower + (rect.upper - rect.lower) * rng.uniform(
            0.05, 0.95, size=dim
        )
        u = OrthantUtility(x0, 1.0 - eps / 2, eps / 2, rect)
        res = rsi_nd(u, D, rect, eps)
        if res.case is not RsiCase.APPROX:
            lemma_violations += 1
            continue
        base = survival_prob(D, x0)
        err = abs((res.value - base) - eps * rect.volume)
        lemma_max_err = max(lemma_max_err, err)
        if err > 1e-12:
            lemma_violations += 1

    eq_holds = eq_fails = 0
    forward_violations = 0
    backward_failures = 0
    worst_forward_margin = np.inf
    worst_backward_shortfall = np.inf
    for trial in range(trials):
        rect = random_rectangle(rng, dim)
        F = random_joint_dist(rng, rect, max_points=max_points)
        G = F if trial % 5 == 0 else random_joint_dist(rng, rect, max_points=max_points)
        eps1, eps2 = _tolerance_pair(rng)
        rep = check_equivalence_theorem_nd(F, G, rect, eps1, eps2)
        if rep.holds_lhs:
            eq_holds += 1
            worst_forward_margin = min(worst_forward_margin, rep.min_margin)
            if not rep.forward_ok:
                forward_violations += 1
        else:
            eq_fails += 1
            shortfall = rep.backward_violation - (
                rep.max_violation - rep.epsilon
            )
            worst_backward_shortfall = min(worst_backward_shortfall, shortfall)
            if not rep.backward_ok:
                backward_failures += 1

    ok = (
        ie_violations == 0
        and lemma_violations == 0
        and forward_violations == 0
        and backward_failures == 0
    )
    return {
        "command": "verify-nd",
        "seed": int(seed),
        "trials": int(trials),
        "dim": int(dim),
        "inclusion_exclusion": {
            "instances": trials,
            "max_abs_error": ie_max_err,
            "violations": ie_violations,
        },
        "integral_lemma": {
            "instances": trials,
            "max_abs_error": lemma_max_err,
            "violations": lemma_violations,
        },
        "equivalence": {
            "instances": trials,
            "holds_count": eq_holds,
            "fails_count": eq_fails,
            "forward_violations": forward_violations,
            "backward_failures": backward_failures,
            "worst_forward_margin": _finite_or_none(worst_forward_margin),
            "worst_backward_shortfall": _finite_or_none(worst_backward_shortfall),
        },
        "pass": bool(ok),
    }


def _finite_or_none(x: float) -> float | None:
    return float(x) if np.isfinite(x) else None
