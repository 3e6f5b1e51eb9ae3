"""Acceptance gate: one recorded PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -v``; the summary lines are
printed at the end of the session.
"""

import math
import time

import numpy as np
import pytest

from lemni import analytic as an
from lemni.criteria import (
    CriterionKind,
    CriterionParams,
    H_func,
    L_func,
    close_to_convex_quantity,
    criterion_lhs,
    gamma_threshold,
    t22_target,
)
from lemni.harness import reverify_certificate, run_conditional, run_forward_t21, solve_p_from_F
from lemni.regions import JanowskiDisk, Lemniscate, boundary_csv, boundary_samples, is_convex_boundary
from lemni.subordination import DEFAULT_GRID, class_margin_at, class_membership, sl, sstar_qc

from .conftest import ACCEPTANCE_LINES

SEED = 7
FORWARD_CASES = [(1.0, 0.0, 1.0), (1.0, 0.5, 0.5), (0.8, 0.3, 1.0)]
CONDITIONAL_CASES = {
    "t22": CriterionParams(gamma=1.0, c=1.0),
    "t23": CriterionParams(gamma=1.0, c=1.0, k=1.0),
    "c21": CriterionParams(gamma=4.0, A=1.0, B=0.0, c=1.0),
    "c24": CriterionParams(gamma=4.0, A=1.0, B=0.0, c=1.0),
    "c27": CriterionParams(gamma=4.0, A=1.0, B=0.0, c=1.0),
    "c29": CriterionParams(gamma=1.0, c=1.0, k=1.0),
}


def record(key, ok, detail):
    ACCEPTANCE_LINES[key] = f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}"
    assert ok, detail


def _forward_runs():
    out = {}
    for A, B, c in FORWARD_CASES:
        out[(A, B, c)] = run_forward_t21(A, B, c, gamma_threshold(A, B, c), 200, SEED)
    return out


def _conditional_runs(kinds):
    return {k: run_conditional(k, CONDITIONAL_CASES[k], 500, SEED) for k in kinds}


@pytest.fixture(scope="module")
def forward():
    start = time.perf_counter()
    runs = _forward_runs()
    return runs, time.perf_counter() - start


@pytest.fixture(scope="module")
def conditional():
    start = time.perf_counter()
    runs = _conditional_runs(CONDITIONAL_CASES)
    return runs, time.perf_counter() - start


def test_1_threshold_exactness():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED)
    worst = abs(gamma_threshold(1, 0, 1) - 4)
    for A, B in zip(rng.uniform(-1, 1, 50), rng.uniform(-0.99, 0.99, 50)):
        expected = 4 * (abs(A) + abs(B)) / (1 - abs(B))
        worst = max(worst, abs(gamma_threshold(A, B, 1) - expected) / max(1, expected))
    for c in np.round(np.arange(0.1, 1.0001, 0.1), 1):
        worst = max(worst, abs(gamma_threshold(1, 0, c) - 2 * (1 + 1 / c)))
    dt = time.perf_counter() - start
    record("1", worst <= 1e-14 and dt < 1, f"threshold max error {worst:.2e} (tol 1e-14), {dt:.3f}s")


def test_2_boundary_identity():
    start = time.perf_counter()
    worst = 0.0
    for c in (0.2, 0.5, 1.0):
        w = boundary_samples(Lemniscate(c), 4096)
        worst = max(worst, float(np.max(np.abs(np.abs(w * w - 1) - c))))
        rows = boundary_csv(Lemniscate(c), 4096).splitlines()
        right = float(rows[1].split(",")[1])
        left = float(rows[1 + 2048].split(",")[1])
        worst = max(worst, abs(right - math.sqrt(1 + c)), abs(left - math.sqrt(1 - c)))
    dt = time.perf_counter() - start
    record("2", worst < 1e-12 and dt < 1, f"boundary identity and endpoints max error {worst:.2e} (tol 1e-12), {dt:.3f}s")


def test_3_convexity():
    start = time.perf_counter()
    cs = np.round(np.arange(0.05, 1.0001, 0.05), 2)
    bad = [c for c in cs if not is_convex_boundary(boundary_samples(Lemniscate(c), 1024))]
    dt = time.perf_counter() - start
    record("3", not bad and dt < 1, f"convex at n=1024 for {len(cs) - len(bad)}/{len(cs)} values of c, {dt:.3f}s")


def test_4_monotonicity():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED)
    violations = 0
    t = np.linspace(-1, 1, 50)
    ks = np.linspace(1, 20, 50)
    for _ in range(100):
        A = rng.uniform(-1, 1)
        B = rng.uniform(-0.99, 0.99)
        c = rng.uniform(0.01, 1)
        g = gamma_threshold(A, B, c) * rng.uniform(0.1, 4)
        k = rng.uniform(1, 10)
        violations += int(np.sum(np.diff(H_func(t, A, B, c, g, k)) > 0))
        violations += int(np.sum(np.diff(L_func(ks, A, B, c, g)) < 0))
    dt = time.perf_counter() - start
    record("4", violations == 0 and dt < 5, f"{violations} monotonicity violations over 100 draws, {dt:.3f}s")


def test_5_forward_harness(forward):
    runs, dt = forward
    bad = []
    for key, rep in runs.items():
        if rep.hypothesis_true_count != rep.trials or rep.min_conclusion_margin is None:
            bad.append(key)
        elif rep.min_conclusion_margin < -1e-9 or rep.aborted:
            bad.append(key)
    margins = ", ".join(f"{k}: {r.min_conclusion_margin:.3g}" for k, r in runs.items())
    record("5", not bad and dt < 60, f"forward runs min margin {margins}; failing {bad}; {dt:.1f}s")


def test_6_quadrature_oracle():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED)
    zs = 0.99 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
    w = an.make_schwarz()
    err = max(float(np.max(np.abs(solve_p_from_F(w, 1, 0, g, zs) - np.exp(zs / g)))) for g in (4, 8))
    dt = time.perf_counter() - start
    record("6", err < 1e-9 and dt < 1, f"max |p - exp(z/gamma)| = {err:.2e} (tol 1e-9), {dt:.3f}s")


def test_7_t22_identity_instance():
    start = time.perf_counter()
    pts = DEFAULT_GRID.points()
    err = 0.0
    for c in (0.2, 0.5, 1.0):
        lhs = criterion_lhs(CriterionKind.T22, an.q_c_composed(c), CriterionParams(c=c), pts)
        err = max(err, float(np.max(np.abs(lhs - t22_target(c, pts)))))
    slack = min(float(np.min(close_to_convex_quantity(c, pts).real)) - (1 - c - 1e-9) for c in (0.2, 0.5, 0.9))
    dt = time.perf_counter() - start
    record("7", err < 1e-12 and slack > 0 and dt < 5,
           f"identity error {err:.2e} (tol 1e-12), close-to-convex slack {slack:.3g}, {dt:.3f}s")


@pytest.mark.parametrize("kind", list(CONDITIONAL_CASES))
def test_8_conditional_harness(conditional, kind):
    runs, dt = conditional
    rep = runs[kind]
    params = CONDITIONAL_CASES[kind]
    reverified = all(reverify_certificate(c, kind, params)[0] for c in rep.conclusion_violations)
    nonvacuous = rep.hypothesis_true_count >= 25
    if rep.violations_are_findings:
        clean = reverified
    else:
        clean = not rep.conclusion_violations
    ok = nonvacuous and clean and not rep.aborted and dt < 120
    record(
        f"8.{kind}",
        ok,
        f"{kind}: hypothesis true in {rep.hypothesis_true_count}/500 (need 25), "
        f"{len(rep.conclusion_violations)} violations, {len(rep.aborted)} aborted; all kinds {dt:.1f}s",
    )


def test_9_determinism(forward, conditional):
    again_f = _forward_runs()
    again_c = _conditional_runs(CONDITIONAL_CASES)
    diff = [k for k, r in forward[0].items() if r.to_json(timing=False) != again_f[k].to_json(timing=False)]
    diff += [k for k, r in conditional[0].items() if r.to_json(timing=False) != again_c[k].to_json(timing=False)]
    record("9", not diff, f"{len(forward[0]) + len(conditional[0])} reports rerun, differing: {diff}")


def test_10_negative_controls():
    start = time.perf_counter()
    v = class_membership(an.moebius(1.0), sl())
    standalone = class_margin_at(an.moebius(1.0), sl(), v.witness)
    fails = not v.holds_at_resolution and standalone <= 0 and standalone == v.min_margin
    exact = all(
        class_membership(an.identity(), sstar_qc(c)).min_margin == c for c in np.round(np.arange(0.1, 1.0001, 0.1), 1)
    )
    dt = time.perf_counter() - start
    record("10", fails and exact and dt < 2,
           f"z/(1-z) witness {v.witness:.4g} margin {v.min_margin:.4g}; identity margin exactly c: {exact}; {dt:.3f}s")
