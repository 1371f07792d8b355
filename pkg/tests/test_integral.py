import numpy as np
import pytest

from ffsd.distributions import Interval, uniform_cdf
from ffsd.errors import FfsdError, IntervalMismatchError, ToleranceTooLargeError
from ffsd.integral import RsiCase, rsi
from ffsd.utility import PiecewiseUtility, exact_indicator, witness_utility
from ffsd.dominance import random_band_utility
from ffsd.verify import random_cdf

IV = Interval(0, 10)
STEP_02_08 = PiecewiseUtility(IV, "step", [3.0], [0.2, 0.8])


def test_worked_example_step_utility_uniform_cdf():
    F = uniform_cdf(IV)
    res = rsi(STEP_02_08, F, 0.2)
    assert res.case is RsiCase.APPROX
    assert res.reference == 3.0
    assert res.tolerance_adjustment == 2.0
    assert abs(res.value - 2.7) <= 1e-12


def test_exact_indicator_ignores_eps():
    F = uniform_cdf(IV)
    u = exact_indicator(6.5, IV)
    values = []
    for eps in (0.0, 0.1, 0.3, 0.49, 0.7, 5.0):
        res = rsi(u, F, eps)
        assert res.case is RsiCase.EXACT
        assert res.tolerance_adjustment == 0.0
        values.append(res.value)
    assert all(v == values[0] for v in values)
    assert abs(values[0] - 0.35) <= 1e-12


def test_fallback_returns_zero():
    F = uniform_cdf(IV)
    half = PiecewiseUtility(IV, "step", [], [0.5])
    res = rsi(half, F, 0.1)
    assert res.case is RsiCase.FALLBACK
    assert res.value == 0.0
    assert res.reference is None


def test_fallback_at_eps_zero_for_approx_only_utility():
    # the definition requires eps > 0 in the approximate branch
    F = uniform_cdf(IV)
    w = witness_utility(5.0, 0.2, IV)
    res = rsi(w, F, 0.0)
    assert res.case is RsiCase.FALLBACK
    assert res.value == 0.0


def test_tolerance_validation():
    F = uniform_cdf(IV)
    with pytest.raises(ToleranceTooLargeError):
        rsi(STEP_02_08, F, 0.5)
    with pytest.raises(FfsdError):
        rsi(STEP_02_08, F, -0.1)
    # exact indicators bypass the eps < 1/2 requirement entirely
    assert rsi(exact_indicator(2.0, IV), F, 0.9).case is RsiCase.EXACT


def test_interval_mismatch():
    F = uniform_cdf(Interval(0, 5))
    with pytest.raises(IntervalMismatchError):
        rsi(STEP_02_08, F, 0.2)


def test_function_shape_independence_bitwise():
    rng = np.random.default_rng(42)
    for _ in range(200):
        F = random_cdf(rng, IV)
        x0 = float(rng.uniform(0.5, 9.5))
        eps = float(rng.uniform(0.02, 0.49))
        u1 = random_band_utility(rng, x0, eps, IV)
        u2 = random_band_utility(rng, x0, eps, IV)
        r1, r2 = rsi(u1, F, eps), rsi(u2, F, eps)
        assert r1.case is RsiCase.APPROX and r2.case is RsiCase.APPROX
        assert r1.value == r2.value  # bitwise


def test_closed_form_lemma():
    rng = np.random.default_rng(43)
    for _ in range(300):
        F = random_cdf(rng, IV)
        x0 = float(rng.uniform(0.5, 9.5))
        eps = float(rng.uniform(0.02, 0.49))
        u = random_band_utility(rng, x0, eps, IV)
        res = rsi(u, F, eps)
        assert res.case is RsiCase.APPROX
        assert abs((res.value - (1.0 - F.eval(x0))) - eps * IV.width) <= 1e-12


def test_monotone_response_in_eps():
    F = uniform_cdf(IV)
    w = witness_utility(4.0, 0.1, IV)  # achieved sup 0.05
    eps_grid = np.linspace(0.06, 0.49, 20)
    values = [rsi(w, F, float(e)).value for e in eps_grid]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_case_precedence_exact_before_approx():
    # an exact indicator is eps-close for every eps, but the exact branch wins
    F = uniform_cdf(IV)
    res = rsi(exact_indicator(3.0, IV), F, 0.3)
    assert res.case is RsiCase.EXACT
    assert res.value == 1.0 - F.eval(3.0)


def test_report_shape():
    F = uniform_cdf(IV)
    rep = rsi(STEP_02_08, F, 0.2).to_report()
    assert set(rep) == {"value", "case", "reference", "tolerance_adjustment"}
    assert rep["case"] == "approx"
