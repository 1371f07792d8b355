"""Pure-numpy fallback for the batched survival kernels.

Semantics match ffsd._kernels (the compiled extension): inclusion-exclusion
terms are accumulated in ascending binary subset order, and the joint CDF
counts points with p <= q in every coordinate.
"""

from __future__ import annotations

import numpy as np

# memory budget for the (candidates x points x dims) comparison block
_CHUNK_ELEMS = 4_000_000


def joint_cdf_batch(
    points: np.ndarray, weights: np.ndarray, qs: np.ndarray
) -> np.ndarray:
    """out[c] = sum of weights[p] over points with points[p] <= qs[c] (all dims)."""
    points = np.ascontiguousarray(points, dtype=np.float64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    qs = np.ascontiguousarray(qs, dtype=np.float64)
    n_pts, dim = points.shape
    out = np.empty(qs.shape[0])
    chunk = max(1, _CHUNK_ELEMS // max(1, n_pts * dim))
    for start in range(0, qs.shape[0], chunk):
        block = qs[start : start + chunk]
        inside = (points[None, :, :] <= block[:, None, :]).all(axis=2)
        # row-wise reduction keeps results independent of the chunk size
        out[start : start + block.shape[0]] = np.where(inside, weights, 0.0).sum(
            axis=1
        )
    return out


def survival_ie_batch(
    points: np.ndarray, weights: np.ndarray, x0s: np.ndarray, b: np.ndarray
) -> np.ndarray:
    """Inclusion-exclusion survival probability for every candidate x0.

    out[c] = 1 - sum over non-empty S of (-1)^(|S|+1) * cdf(mixed(x0[c], b, S)).
    Raw values are returned unclamped; callers decide the output range.
    """
    x0s = np.ascontiguousarray(x0s, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    n_cand, dim = x0s.shape
    total = np.zeros(n_cand)
    for mask in range(1, 1 << dim):
        bits = np.array([(mask >> i) & 1 for i in range(dim)], dtype=bool)
        sign = 1.0 if bits.sum() % 2 == 1 else -1.0
        q = np.where(bits, x0s, b)
        total += sign * joint_cdf_batch(points, weights, q)
    return 1.0 - total
