# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled batched survival kernels.

Semantics match ffsd._kernels_py: ascending binary subset order for the
inclusion-exclusion accumulation, p <= q in every coordinate for the joint
CDF. Raw (unclamped) values are returned.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def joint_cdf_batch(object points_in, object weights_in, object qs_in):
    cdef const double[:, ::1] points = np.ascontiguousarray(points_in, dtype=np.float64)
    cdef const double[::1] weights = np.ascontiguousarray(weights_in, dtype=np.float64)
    cdef const double[:, ::1] qs = np.ascontiguousarray(qs_in, dtype=np.float64)
    cdef Py_ssize_t n_pts = points.shape[0]
    cdef Py_ssize_t dim = points.shape[1]
    cdef Py_ssize_t n_q = qs.shape[0]
    out_arr = np.empty(n_q, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t c, p, i
    cdef double acc
    cdef bint inside
    for c in range(n_q):
        acc = 0.0
        for p in range(n_pts):
            inside = True
            for i in range(dim):
                if points[p, i] > qs[c, i]:
                    inside = False
                    break
            if inside:
                acc += weights[p]
        out[c] = acc
    return out_arr


def survival_ie_batch(object points_in, object weights_in, object x0s_in, object b_in):
    cdef const double[:, ::1] points = np.ascontiguousarray(points_in, dtype=np.float64)
    cdef const double[::1] weights = np.ascontiguousarray(weights_in, dtype=np.float64)
    cdef const double[:, ::1] x0s = np.ascontiguousarray(x0s_in, dtype=np.float64)
    cdef const double[::1] b = np.ascontiguousarray(b_in, dtype=np.float64)
    cdef Py_ssize_t n_pts = points.shape[0]
    cdef Py_ssize_t dim = points.shape[1]
    cdef Py_ssize_t n_cand = x0s.shape[0]
    out_arr = np.empty(n_cand, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t c, p, i
    cdef unsigned int mask, m, n_masks
    cdef int bits
    cdef double total, term, sign, q
    cdef bint inside
    n_masks = <unsigned int>(1 << dim)
    for c in range(n_cand):
        total = 0.0
        for mask in range(1, n_masks):
            bits = 0
            m = mask
            while m:
                bits += m & 1
                m >>= 1
            sign = 1.0 if bits % 2 == 1 else -1.0
            term = 0.0
            for p in range(n_pts):
                inside = True
                for i in range(dim):
                    if (mask >> i) & 1:
                        q = x0s[c, i]
                    else:
                        q = b[i]
                    if points[p, i] > q:
                        inside = False
                        break
                if inside:
                    term += weights[p]
            total += sign * term
        out[c] = 1.0 - total
    return out_arr
