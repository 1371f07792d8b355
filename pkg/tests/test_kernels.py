import numpy as np
import pytest

from ffsd import _kernels_py
from ffsd import kernels
from ffsd.verify import random_joint_dist, random_rectangle

try:
    from ffsd import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def _naive_joint_cdf(points, weights, q):
    total = 0.0
    for p, w in zip(points, weights):
        if all(p[i] <= q[i] for i in range(len(q))):
            total += w
    return total


def _naive_survival(points, weights, x0, b):
    n = len(x0)
    total = 0.0
    for mask in range(1, 1 << n):
        subset = [i for i in range(n) if (mask >> i) & 1]
        sign = 1.0 if len(subset) % 2 == 1 else -1.0
        q = [x0[i] if i in subset else b[i] for i in range(n)]
        total += sign * _naive_joint_cdf(points, weights, q)
    return 1.0 - total


def _random_instance(rng, dim, n_pts, n_cand):
    rect = random_rectangle(rng, dim)
    D = random_joint_dist(rng, rect, max_points=n_pts, min_points=n_pts)
    x0s = rect.lower + (rect.upper - rect.lower) * rng.random((n_cand, dim))
    return D, x0s


def test_fallback_matches_naive_reference():
    rng = np.random.default_rng(0)
    for dim in (1, 2, 3, 4):
        D, x0s = _random_instance(rng, dim, 15, 8)
        got = _kernels_py.survival_ie_batch(D.points, D.weights, x0s, D.rect.upper)
        want = [_naive_survival(D.points, D.weights, x0, D.rect.upper) for x0 in x0s]
        np.testing.assert_allclose(got, want, atol=1e-12)
        cdf_got = _kernels_py.joint_cdf_batch(D.points, D.weights, x0s)
        cdf_want = [_naive_joint_cdf(D.points, D.weights, q) for q in x0s]
        np.testing.assert_allclose(cdf_got, cdf_want, atol=1e-12)


@pytest.mark.skipif(_kernels_c is None, reason="compiled extension not built")
def test_compiled_matches_fallback():
    rng = np.random.default_rng(1)
    for dim in (1, 2, 3, 5):
        D, x0s = _random_instance(rng, dim, 40, 64)
        got_c = _kernels_c.survival_ie_batch(D.points, D.weights, x0s, D.rect.upper)
        got_py = _kernels_py.survival_ie_batch(D.points, D.weights, x0s, D.rect.upper)
        np.testing.assert_allclose(got_c, got_py, atol=1e-12)
        cdf_c = _kernels_c.joint_cdf_batch(D.points, D.weights, x0s)
        cdf_py = _kernels_py.joint_cdf_batch(D.points, D.weights, x0s)
        np.testing.assert_allclose(cdf_c, cdf_py, atol=1e-12)


def test_selected_backend_accepts_readonly_arrays():
    # DiscreteJointDist freezes its arrays; the active backend must cope
    rng = np.random.default_rng(2)
    D, x0s = _random_instance(rng, 3, 10, 5)
    assert not D.points.flags.writeable
    out = kernels.survival_ie_batch(D.points, D.weights, x0s, D.rect.upper)
    assert out.shape == (5,)


def test_backend_name_reported():
    assert kernels.BACKEND in ("compiled", "python")


def test_chunking_consistency():
    # fallback chunks big candidate blocks; results must not depend on it
    rng = np.random.default_rng(3)
    D, x0s = _random_instance(rng, 2, 30, 500)
    whole = _kernels_py.joint_cdf_batch(D.points, D.weights, x0s)
    old = _kernels_py._CHUNK_ELEMS
    try:
        _kernels_py._CHUNK_ELEMS = 120  # force many tiny chunks
        tiny = _kernels_py.joint_cdf_batch(D.points, D.weights, x0s)
    finally:
        _kernels_py._CHUNK_ELEMS = old
    np.testing.assert_array_equal(whole, tiny)
