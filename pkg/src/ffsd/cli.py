"""Command-line front end.

All numeric logic lives in the library; this module only parses inputs,
dispatches, and renders reports. Exit codes: 0 for success (and for
dominance/verify answers of "yes"), 1 when a computation validly answers
"no" (dominance fails, a verify suite finds violations), 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .distributions import (
    Interval,
    PiecewiseCdf,
    from_samples,
    load_cdf_json,
    load_samples_csv,
)
from .dominance import check_ffsd, min_epsilon_ffsd
from .errors import FfsdError
from .integral import rsi
from .multidim import (
    check_nffsd,
    load_joint_json,
    min_epsilon_nffsd,
    survival_prob,
)
from .utility import classify_indicator, load_utility_json
from .verify import verify_1d, verify_nd

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffsd",
        description="Tolerance-based stochastic dominance toolkit",
    )
    parser.add_argument(
        "--format",
        choices=("json", "table"),
        default="json",
        help="report rendering (default json)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="1-D dominance verdict F vs G at a slack")
    _add_pair_inputs(p)
    p.add_argument("--eps", type=float, required=True)

    p = sub.add_parser("min-eps", help="least slack at which F dominates G")
    _add_pair_inputs(p)

    p = sub.add_parser("rsi", help="robust integral of a utility against a cdf")
    p.add_argument("--u", required=True, help="utility JSON spec")
    p.add_argument("--f", required=True, help="cdf (JSON spec or CSV samples)")
    p.add_argument("--interval", type=float, nargs=2, metavar=("A", "B"))
    p.add_argument("--eps", type=float, required=True)

    p = sub.add_parser("classify", help="indicator classification of a utility")
    p.add_argument("--u", required=True, help="utility JSON spec")
    p.add_argument("--eps", type=float, required=True)

    p = sub.add_parser("verify-1d", help="seeded randomized 1-D suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)

    p = sub.add_parser("verify-nd", help="seeded randomized n-D suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dim", type=int, default=2)

    nd = sub.add_parser("nd", help="n-dimensional commands")
    ndsub = nd.add_subparsers(dest="nd_command", required=True)

    p = ndsub.add_parser("survival", help="survival probability at a reference")
    p.add_argument("--dist", required=True, help="joint distribution JSON")
    p.add_argument("--x0", required=True, help="comma-separated reference point")

    p = ndsub.add_parser("check", help="n-D survival dominance verdict")
    p.add_argument("--f", required=True, help="joint distribution JSON")
    p.add_argument("--g", required=True, help="joint distribution JSON")
    p.add_argument("--eps-surv", type=float, required=True)

    p = ndsub.add_parser("min-eps", help="least survival slack for dominance")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)

    p = ndsub.add_parser("verify", help="alias of verify-nd")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dim", type=int, default=2)

    return parser


def _add_pair_inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--f", required=True, help="cdf (JSON spec or CSV samples)")
    p.add_argument("--g", required=True, help="cdf (JSON spec or CSV samples)")
    p.add_argument(
        "--interval",
        type=float,
        nargs=2,
        metavar=("A", "B"),
        help="support interval; required when loading CSV samples",
    )


def _load_cdf(path: str, interval_args) -> PiecewiseCdf:
    if path.endswith(".csv"):
        if interval_args is None:
            raise FfsdError("--interval A B is required for CSV sample inputs")
        interval = Interval(*interval_args)
        return from_samples(load_samples_csv(path), interval)
    return load_cdf_json(path)


def _parse_vector(text: str) -> np.ndarray:
    try:
        return np.array([float(tok) for tok in text.split(",") if tok.strip()])
    except ValueError as exc:
        raise FfsdError(f"bad vector {text!r}: {exc}") from exc


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    lines = []
    for key, value in _flatten(report):
        if isinstance(value, (list, dict)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key:<42} {value}")
    return "\n".join(lines)


def _flatten(d: dict, prefix: str = ""):
    for k in sorted(d):
        v = d[k]
        if isinstance(v, dict):
            yield from _flatten(v, f"{prefix}{k}.")
        else:
            yield f"{prefix}{k}", v


def _run(args: argparse.Namespace) -> tuple[dict, int]:
    if args.command == "check":
        F = _load_cdf(args.f, args.interval)
        G = _load_cdf(args.g, args.interval)
        verdict = check_ffsd(F, G, args.eps)
        return verdict.to_report(), EXIT_OK if verdict.holds else EXIT_NEGATIVE
    if args.command == "min-eps":
        F = _load_cdf(args.f, args.interval)
        G = _load_cdf(args.g, args.interval)
        return {"epsilon": min_epsilon_ffsd(F, G)}, EXIT_OK
    if args.command == "rsi":
        u = load_utility_json(args.u)
        F = _load_cdf(args.f, args.interval)
        return rsi(u, F, args.eps).to_report(), EXIT_OK
    if args.command == "classify":
        u = load_utility_json(args.u)
        return classify_indicator(u, args.eps).to_report(), EXIT_OK
    if args.command == "verify-1d":
        report = verify_1d(args.seed, args.trials)
        return report, EXIT_OK if report["pass"] else EXIT_NEGATIVE
    if args.command == "verify-nd":
        report = verify_nd(args.seed, args.trials, args.dim)
        return report, EXIT_OK if report["pass"] else EXIT_NEGATIVE
    if args.command == "nd":
        return _run_nd(args)
    raise FfsdError(f"unknown command {args.command!r}")


def _run_nd(args: argparse.Namespace) -> tuple[dict, int]:
    if args.nd_command == "survival":
        D = load_joint_json(args.dist)
        x0 = _parse_vector(args.x0)
        value = survival_prob(D, x0)
        return {"survival": value, "reference": x0.tolist()}, EXIT_OK
    if args.nd_command == "check":
        F = load_joint_json(args.f)
        G = load_joint_json(args.g)
        verdict = check_nffsd(F, G, F.rect, args.eps_surv)
        return verdict.to_report(), EXIT_OK if verdict.holds else EXIT_NEGATIVE
    if args.nd_command == "min-eps":
        F = load_joint_json(args.f)
        G = load_joint_json(args.g)
        return {"epsilon": min_epsilon_nffsd(F, G, F.rect)}, EXIT_OK
    if args.nd_command == "verify":
        report = verify_nd(args.seed, args.trials, args.dim)
        return report, EXIT_OK if report["pass"] else EXIT_NEGATIVE
    raise FfsdError(f"unknown nd command {args.nd_command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = _run(args)
    except (FfsdError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(_render(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
