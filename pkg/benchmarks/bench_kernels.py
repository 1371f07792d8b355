#!/usr/bin/env python3
"""Benchmark the batched survival kernels: compiled extension vs numpy fallback.

The inclusion-exclusion sweep over candidate reference points is the hot
loop of the n-D dominance checks; this script times both backends on the
same instance and reports the speedup plus the worst numerical gap.

Usage: python benchmarks/bench_kernels.py [--points 200] [--candidates 20000]
       [--dim 3] [--repeats 5] [--seed 0]
"""

import argparse
import json
import time

import numpy as np

from ffsd import _kernels_py
from ffsd.verify import random_joint_dist, random_rectangle

try:
    from ffsd import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def time_backend(fn, args, repeats):
    best = np.inf
    out = None
    for _ in range(repeats):
        start = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=200)
    parser.add_argument("--candidates", type=int, default=20_000)
    parser.add_argument("--dim", type=int, default=3)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    rect = random_rectangle(rng, args.dim)
    D = random_joint_dist(rng, rect, max_points=args.points, min_points=args.points)
    x0s = rect.lower + (rect.upper - rect.lower) * rng.random(
        (args.candidates, args.dim)
    )
    call_args = (D.points, D.weights, x0s, rect.upper)

    t_py, out_py = time_backend(_kernels_py.survival_ie_batch, call_args, args.repeats)
    result = {
        "points": args.points,
        "candidates": args.candidates,
        "dim": args.dim,
        "subsets_per_candidate": (1 << args.dim) - 1,
        "python_fallback_seconds": t_py,
    }
    if _kernels_c is None:
        result["compiled"] = "not built"
    else:
        t_c, out_c = time_backend(_kernels_c.survival_ie_batch, call_args, args.repeats)
        result["compiled_seconds"] = t_c
        result["speedup_compiled_over_python"] = t_py / t_c
        result["max_abs_backend_gap"] = float(np.max(np.abs(out_py - out_c)))
    print(json.dumps(result, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
