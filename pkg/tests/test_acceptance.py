"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion
report. Tolerances are pinned here and nowhere else.
"""

import json

import numpy as np

from ffsd.cli import main
from ffsd.distributions import Interval, from_samples, uniform_cdf
from ffsd.dominance import (
    check_equivalence_theorem,
    check_ffsd,
    min_epsilon_ffsd,
    random_band_utility,
)
from ffsd.integral import RsiCase, rsi
from ffsd.multidim import (
    DiscreteJointDist,
    OrthantUtility,
    Rectangle,
    check_equivalence_theorem_nd,
    check_nffsd,
    min_epsilon_nffsd,
    rsi_nd,
    survival_direct,
    survival_prob,
)
from ffsd.oracle import ambiguous_utility, midpoint_contradiction_certificate
from ffsd.utility import (
    PiecewiseUtility,
    feasible_references,
    sup_distance_to_indicator,
)
from ffsd.verify import (
    random_cdf,
    random_interval,
    random_joint_dist,
    random_rectangle,
    random_utility,
)

IV10 = Interval(0, 10)


def report(num: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE CRITERION {num}: {status} - {detail}")
    assert ok, f"criterion {num} failed: {detail}"


def test_criterion_1_worked_example_reproduction():
    u = PiecewiseUtility(IV10, "step", [3.0], [0.2, 0.8])
    rng = np.random.default_rng(101)
    mismatches = 0
    for _ in range(20):
        F = random_cdf(rng, IV10)
        res = rsi(u, F, 0.2)
        expected = (1.0 - F.eval(3.0)) + 2.0  # 0.2 * 10, same expression
        if res.value != expected or res.case is not RsiCase.APPROX:
            mismatches += 1
    uniform_err = abs(rsi(u, uniform_cdf(IV10), 0.2).value - 2.7)
    ok = mismatches == 0 and uniform_err <= 1e-12
    report(1, ok, f"20 random cdfs bitwise-exact, uniform error {uniform_err:.2e}")


def test_criterion_2_uniqueness_suite():
    rng = np.random.default_rng(202)
    n = 10_000
    feasible_violations = 0
    cert_violations = 0
    max_feasible = 0
    for _ in range(n):
        iv = random_interval(rng)
        u = random_utility(rng, iv)
        eps = float(rng.uniform(1e-9, 0.5 - 1e-12))
        size = len(feasible_references(u, eps))
        max_feasible = max(max_feasible, size)
        if size > 1:
            feasible_violations += 1
        pad = 1e-6 * iv.width
        x1, x2 = rng.uniform(iv.a + pad, iv.b - pad, size=2)
        if x1 != x2:
            cert = midpoint_contradiction_certificate(u, float(x1), float(x2))
            if cert.d1_lower + cert.d2_lower < 1.0 - 1e-12:
                cert_violations += 1
    amb = ambiguous_utility(IV10)
    amb_ok = all(
        sup_distance_to_indicator(amb, float(x0)) == 0.5
        for x0 in np.linspace(0.1, 9.9, 101)
    )  # every reference is feasible exactly at eps = 1/2
    ok = feasible_violations == 0 and cert_violations == 0 and amb_ok
    report(
        2,
        ok,
        f"{n} utilities, max feasible set {max_feasible}, "
        f"{cert_violations} certificate violations, ambiguous-at-half ok={amb_ok}",
    )


def test_criterion_3_integral_value_lemma():
    rng = np.random.default_rng(303)
    worst_1d = 0.0
    for _ in range(1000):
        iv = random_interval(rng)
        F = random_cdf(rng, iv)
        eps = float(rng.uniform(0.01, 0.49))
        x0 = float(rng.uniform(iv.a + 0.02 * iv.width, iv.b - 0.02 * iv.width))
        u = random_band_utility(rng, x0, eps, iv)
        res = rsi(u, F, eps)
        assert res.case is RsiCase.APPROX
        worst_1d = max(worst_1d, abs((res.value - (1.0 - F.eval(x0))) - eps * iv.width))
    worst_nd = 0.0
    for _ in range(1000):
        dim = int(rng.integers(1, 5))
        rect = random_rectangle(rng, dim)
        D = random_joint_dist(rng, rect, max_points=12)
        eps = float(rng.uniform(0.01, 0.49))
        ref = rect.lower + (rect.upper - rect.lower) * rng.uniform(0.1, 0.9, size=dim)
        res = rsi_nd(OrthantUtility(ref, 1 - eps / 2, eps / 2, rect), D, rect, eps)
        assert res.case is RsiCase.APPROX
        worst_nd = max(
            worst_nd, abs((res.value - survival_prob(D, ref)) - eps * rect.volume)
        )
    ok = worst_1d <= 1e-12 and worst_nd <= 1e-12
    report(3, ok, f"1-D worst {worst_1d:.2e}, n-D worst {worst_nd:.2e} (tol 1e-12)")


def test_criterion_4_function_shape_independence():
    rng = np.random.default_rng(404)
    mismatches = 0
    for _ in range(1000):
        iv = random_interval(rng)
        F = random_cdf(rng, iv)
        eps = float(rng.uniform(0.02, 0.49))
        x0 = float(rng.uniform(iv.a + 0.05 * iv.width, iv.b - 0.05 * iv.width))
        u1 = random_band_utility(rng, x0, eps, iv)
        u2 = random_band_utility(rng, x0, eps, iv)
        if rsi(u1, F, eps).value != rsi(u2, F, eps).value:
            mismatches += 1
    report(4, mismatches == 0, f"1000 pairs, {mismatches} bitwise mismatches")


def test_criterion_5_equivalence_theorem_1d():
    rng = np.random.default_rng(505)
    holds = fails = 0
    forward_violations = 0
    backward_missing = 0
    for trial in range(1000):
        iv = random_interval(rng)
        F = random_cdf(rng, iv)
        G = F if trial % 5 == 0 else random_cdf(rng, iv)
        eps2 = float(rng.uniform(0.02, 0.3))
        eps1 = float(rng.uniform(eps2 + 0.01, 0.499))
        rep = check_equivalence_theorem(F, G, eps1, eps2, rng=rng)
        if rep.holds_lhs:
            holds += 1
            if rep.min_margin < -1e-9:
                forward_violations += 1
        else:
            fails += 1
            if not (
                rep.backward_violation >= rep.max_violation - rep.epsilon - 1e-9
            ):
                backward_missing += 1
    ok = forward_violations == 0 and backward_missing == 0 and holds > 0 and fails > 0
    report(
        5,
        ok,
        f"1000 instances ({holds} hold / {fails} fail), "
        f"{forward_violations} forward violations, {backward_missing} missing witnesses",
    )


def test_criterion_6_inclusion_exclusion_oracle():
    rng = np.random.default_rng(606)
    worst = 0.0
    for _ in range(1000):
        dim = int(rng.integers(1, 7))
        rect = random_rectangle(rng, dim)
        D = random_joint_dist(rng, rect, max_points=200)
        x0 = rect.lower + (rect.upper - rect.lower) * rng.uniform(0.05, 0.95, size=dim)
        worst = max(worst, abs(survival_prob(D, x0) - survival_direct(D, x0)))
    four = DiscreteJointDist(
        np.array([[1.0, 1.0], [1.0, 3.0], [3.0, 1.0], [3.0, 3.0]]),
        [0.25] * 4,
        Rectangle([0, 0], [4, 4]),
    )
    exact = survival_prob(four, [2, 2]) == 0.25
    ok = worst <= 1e-9 and exact
    report(6, ok, f"1000 instances worst gap {worst:.2e} (tol 1e-9), 4-atom exact={exact}")


def test_criterion_7_equivalence_theorem_nd():
    rng = np.random.default_rng(707)
    holds = fails = 0
    forward_violations = 0
    backward_missing = 0
    for dim in (2, 3):
        for trial in range(500):
            rect = random_rectangle(rng, dim)
            F = random_joint_dist(rng, rect, max_points=6)
            G = F if trial % 5 == 0 else random_joint_dist(rng, rect, max_points=6)
            eps2 = float(rng.uniform(0.02, 0.3))
            eps1 = float(rng.uniform(eps2 + 0.01, 0.499))
            rep = check_equivalence_theorem_nd(F, G, rect, eps1, eps2)
            if rep.holds_lhs:
                holds += 1
                if rep.min_margin < -1e-9:
                    forward_violations += 1
            else:
                fails += 1
                if not (
                    rep.backward_violation >= rep.max_violation - rep.epsilon - 1e-9
                ):
                    backward_missing += 1
    ok = forward_violations == 0 and backward_missing == 0 and holds > 0 and fails > 0
    report(
        7,
        ok,
        f"1000 instances over n=2,3 ({holds} hold / {fails} fail), "
        f"{forward_violations} forward violations, {backward_missing} missing witnesses",
    )


def test_criterion_8_dimensional_consistency():
    rng = np.random.default_rng(808)
    worst = 0.0
    dominance_gap = 0.0
    for _ in range(500):
        iv = random_interval(rng)
        rect = Rectangle([iv.a], [iv.b])
        n_f = int(rng.integers(1, 9))
        n_g = int(rng.integers(1, 9))
        f_atoms = np.unique(iv.a + iv.width * (1.0 - rng.random(n_f)))
        g_atoms = np.unique(iv.a + iv.width * (1.0 - rng.random(n_g)))
        F1 = from_samples(f_atoms, iv)
        G1 = from_samples(g_atoms, iv)
        DF = DiscreteJointDist(
            f_atoms.reshape(-1, 1), np.full(f_atoms.size, 1.0 / f_atoms.size), rect
        )
        DG = DiscreteJointDist(
            g_atoms.reshape(-1, 1), np.full(g_atoms.size, 1.0 / g_atoms.size), rect
        )
        x0 = float(rng.uniform(iv.a + 0.02 * iv.width, iv.b - 0.02 * iv.width))
        worst = max(
            worst, abs(survival_prob(DF, [x0]) - (1.0 - F1.eval(x0)))
        )
        eps = float(rng.uniform(0.01, 0.49))
        hi, lo = 1.0 - eps / 2, eps / 2
        r1 = rsi(PiecewiseUtility(iv, "step", [x0], [lo, hi]), F1, eps)
        rnd = rsi_nd(OrthantUtility([x0], hi, lo, rect), DF, rect, eps)
        worst = max(worst, abs(r1.value - rnd.value))
        m1 = min_epsilon_ffsd(F1, G1)
        mn = min_epsilon_nffsd(DF, DG, rect)
        dominance_gap = max(dominance_gap, abs(m1 - mn))
        assert check_nffsd(DF, DG, rect, m1 + 0.01).holds
        assert check_ffsd(F1, G1, m1 + 0.01).holds
    ok = worst <= 1e-12 and dominance_gap <= 1e-12
    report(
        8,
        ok,
        f"500 matched instances, survival/rsi worst {worst:.2e}, "
        f"min-eps gap {dominance_gap:.2e} (tol 1e-12)",
    )


def test_criterion_9_cli_determinism_and_exit_codes(tmp_path, capsys):
    argv = ["verify-1d", "--seed", "42", "--trials", "100"]
    code1 = main(list(argv))
    out1 = capsys.readouterr().out
    code2 = main(list(argv))
    out2 = capsys.readouterr().out
    identical = out1 == out2 and code1 == code2 == 0

    def write(name, payload):
        p = tmp_path / name
        p.write_text(json.dumps(payload) if isinstance(payload, dict) else payload)
        return str(p)

    bps = [0.5 * k for k in range(1, 20)]
    f_uni = write("f.json", {"interval": [0, 10], "kind": "linear",
                             "breakpoints": [], "values": []})
    g_sq = write("g.json", {"interval": [0, 10], "kind": "linear",
                            "breakpoints": bps,
                            "values": [(x / 10.0) ** 2 for x in bps]})
    u_step = write("u.json", {"interval": [0, 10], "kind": "step",
                              "breakpoints": [3.0], "values": [0.2, 0.8]})
    bad_json = write("bad.json", "{oops")
    bad_csv = write("bad.csv", "value\n-1\n2\n")
    samples = write("s.csv", "value\n2\n4\n4\n8\n")

    invocations = [
        (["check", "--f", f_uni, "--g", g_sq, "--eps", "0.25"], 0),
        (["check", "--f", f_uni, "--g", g_sq, "--eps", "0.2"], 1),
        (["min-eps", "--f", samples, "--g", samples, "--interval", "0", "10"], 0),
        (["rsi", "--u", u_step, "--f", bad_json, "--eps", "0.2"], 2),
        (["min-eps", "--f", bad_csv, "--g", samples, "--interval", "0", "10"], 2),
        (["classify", "--u", u_step, "--eps", "0.75"], 2),
    ]
    wrong = []
    for cli_args, want in invocations:
        got = main(list(cli_args))
        capsys.readouterr()
        if got != want:
            wrong.append((cli_args, want, got))
    ok = identical and not wrong
    with capsys.disabled():
        report(
            9,
            ok,
            f"verify-1d seed 42 byte-identical={identical}, "
            f"exit-code mismatches={wrong}",
        )
