import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffsd.distributions import (
    Interval,
    PiecewiseCdf,
    cdf_eval,
    from_samples,
    load_cdf_json,
    load_samples_csv,
    uniform_cdf,
)
from ffsd.errors import (
    EmptySampleError,
    FfsdError,
    OutOfDomainError,
    SampleOutOfRangeError,
)


def test_interval_requires_strict_order():
    Interval(0.0, 1.0)
    with pytest.raises(FfsdError):
        Interval(1.0, 1.0)
    with pytest.raises(FfsdError):
        Interval(2.0, 1.0)


def test_uniform_cdf_values():
    F = uniform_cdf(Interval(0, 10))
    assert cdf_eval(F, 6.5) == 0.65
    assert cdf_eval(F, 3.0) == 0.3
    assert cdf_eval(F, 0.0) == 0.0
    assert cdf_eval(F, 10.0) == 1.0
    F01 = uniform_cdf(Interval(0, 1))
    assert F01.eval(0.0) == 0.0
    assert F01.eval(1.0) == 1.0


def test_eval_out_of_domain():
    F = uniform_cdf(Interval(0, 10))
    with pytest.raises(OutOfDomainError):
        F.eval(-0.001)
    with pytest.raises(OutOfDomainError):
        F.eval(10.001)


def test_from_samples_worked_example():
    F = from_samples([2, 4, 4, 8], Interval(0, 10))
    assert F.eval(4.0) == 0.75
    assert F.eval(0.0) == 0.0
    assert F.eval(10.0) == 1.0


def test_from_samples_single_atom_right_continuity():
    F = from_samples([5], Interval(0, 10))
    assert F.eval(4.999) == 0.0
    assert F.eval(5.0) == 1.0
    assert F.left_limit(5.0) == 0.0


def test_from_samples_rejects_bad_input():
    with pytest.raises(EmptySampleError):
        from_samples([], Interval(0, 1))
    with pytest.raises(SampleOutOfRangeError):
        from_samples([0.0, 0.5], Interval(0, 1))  # atom at a
    with pytest.raises(SampleOutOfRangeError):
        from_samples([0.5, 1.5], Interval(0, 1))
    # an atom exactly at b is allowed
    F = from_samples([1.0], Interval(0, 1))
    assert F.eval(1.0) == 1.0


def test_counting_oracle_agreement_exact():
    rng = np.random.default_rng(1234)
    samples = rng.uniform(0.0, 10.0, size=37)
    samples = samples[samples > 0.0]
    F = from_samples(samples, Interval(0, 10))
    xs = rng.uniform(0.0, 10.0, size=1000)
    for x in xs:
        expected = np.count_nonzero(samples <= x) / samples.size
        assert F.eval(float(x)) == expected


@settings(max_examples=100, deadline=None)
@given(
    samples=st.lists(
        st.floats(min_value=0.01, max_value=10.0, allow_nan=False), min_size=1, max_size=30
    ),
    q=st.tuples(
        st.floats(min_value=0.0, max_value=10.0),
        st.floats(min_value=0.0, max_value=10.0),
    ),
)
def test_cdf_monotone(samples, q):
    F = from_samples(samples, Interval(0, 10))
    x, y = sorted(q)
    assert F.eval(x) <= F.eval(y)


def test_step_construction_invariants():
    iv = Interval(0, 1)
    with pytest.raises(FfsdError):
        PiecewiseCdf(iv, "step", [0.2, 0.2], [0.5, 1.0])  # not strictly increasing
    with pytest.raises(FfsdError):
        PiecewiseCdf(iv, "step", [0.0, 0.5], [0.5, 1.0])  # breakpoint at a
    with pytest.raises(FfsdError):
        PiecewiseCdf(iv, "step", [0.5], [0.9])  # does not reach 1
    with pytest.raises(FfsdError):
        PiecewiseCdf(iv, "step", [0.3, 0.6], [0.8, 0.5])  # decreasing
    # within 1e-12 of 1 gets snapped exactly
    F = PiecewiseCdf(iv, "step", [0.5], [1.0 - 1e-13])
    assert F.eval(1.0) == 1.0


def test_linear_construction_and_eval():
    iv = Interval(0, 1)
    F = PiecewiseCdf(iv, "linear", [0.25, 0.5], [0.1, 0.9])
    assert F.eval(0.25) == 0.1
    assert F.eval(0.5) == 0.9
    assert F.eval(0.0) == 0.0
    assert F.eval(1.0) == 1.0
    assert abs(F.eval(0.375) - 0.5) < 1e-15
    with pytest.raises(FfsdError):
        PiecewiseCdf(iv, "linear", [1.0], [0.5])  # breakpoint at b
    with pytest.raises(FfsdError):
        PiecewiseCdf(iv, "linear", [0.5], [1.5])  # value above 1


def test_left_limit_at_jump():
    F = from_samples([2, 4, 4, 8], Interval(0, 10))
    assert F.left_limit(4.0) == 0.25
    assert F.eval(4.0) == 0.75
    assert F.left_limit(2.0) == 0.0
    assert F.left_limit(10.0) == 1.0


def test_eval_many_matches_scalar():
    rng = np.random.default_rng(7)
    F = from_samples(rng.uniform(0.1, 9.9, size=11), Interval(0, 10))
    G = PiecewiseCdf(Interval(0, 10), "linear", [2.0, 7.0], [0.3, 0.6])
    xs = rng.uniform(0.0, 10.0, size=200)
    np.testing.assert_array_equal(F.eval_many(xs), [F.eval(x) for x in xs])
    got = G.eval_many(xs)
    want = np.array([G.eval(x) for x in xs])
    np.testing.assert_allclose(got, want, atol=1e-15)


def test_json_round_trip(tmp_path):
    F = PiecewiseCdf(Interval(0, 10), "linear", [2.0], [0.4])
    path = tmp_path / "f.json"
    path.write_text(json.dumps(F.to_spec_dict()))
    G = load_cdf_json(str(path))
    assert G.kind == F.kind
    assert G.interval == F.interval
    np.testing.assert_array_equal(G.breakpoints, F.breakpoints)
    np.testing.assert_array_equal(G.values, F.values)


def test_json_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(FfsdError):
        load_cdf_json(str(path))
    path.write_text(json.dumps({"interval": [0, 1]}))
    with pytest.raises(FfsdError):
        load_cdf_json(str(path))


def test_csv_loader(tmp_path):
    path = tmp_path / "s.csv"
    path.write_text("value\n1.5\n2.5\n\n3.5\n")
    assert load_samples_csv(str(path)) == [1.5, 2.5, 3.5]
    path.write_text("1.5\n2.5\n")
    assert load_samples_csv(str(path)) == [1.5, 2.5]
    path.write_text("value\nnot-a-number\n")
    with pytest.raises(FfsdError):
        load_samples_csv(str(path))
