import json
import math

import numpy as np
import pytest

from lemni import analytic as an
from lemni.criteria import CriterionKind, CriterionParams, check_implication
from lemni.errors import InvalidParams
from lemni.harness import (
    make_certificate,
    margin_sweep,
    random_f,
    random_p,
    random_schwarz,
    reverify_certificate,
    reverify_hypothesis,
    run_conditional,
    run_forward_t21,
    solve_p_from_F,
    solve_p_map,
    trial_rng,
)
from lemni.subordination import DiskGrid

GRID = DiskGrid((0.3, 0.6, 0.9, 0.99), 64)


def test_solve_p_closed_form():
    w = an.make_schwarz()
    assert solve_p_from_F(w, 1, 0, 4, 0.8) == pytest.approx(math.exp(0.2), abs=1e-12)
    rng = np.random.default_rng(3)
    zs = 0.95 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
    for g in (4, 8):
        assert np.max(np.abs(solve_p_from_F(w, 1, 0, g, zs) - np.exp(zs / g))) < 1e-9


def test_solve_p_zero_integrand():
    assert solve_p_from_F(an.make_schwarz(), 0, 0, 4, 0.5j) == 1


def test_solve_p_satisfies_differential_relation():
    # 1 + gamma z p'/p must equal F = (1 + A w)/(1 + B w)
    rng = trial_rng(11, 0)
    w = random_schwarz(rng)
    A, B, g = 0.8, 0.3, 9.0
    p = solve_p_map(w, A, B, g)
    zs = np.array([0.2, 0.5j, -0.6 + 0.3j])
    lhs = 1 + g * zs * an.eval_deriv(p, zs) / an.evaluate(p, zs)
    F = (1 + A * w(zs)) / (1 + B * w(zs))
    assert np.allclose(lhs, F, atol=1e-9)


def test_random_subjects_are_valid():
    for i in range(30):
        rng = trial_rng(5, i)
        p, _ = random_p(rng)
        assert an.evaluate(p, 0) == 1
        f, _ = random_f(rng)
        assert an.evaluate(f, 0) == 0 and abs(an.eval_deriv(f, 0) - 1) < 1e-15


def test_forward_t21_small():
    rep = run_forward_t21(1, 0, 1, 4, 12, seed=1, grid=GRID)
    assert rep.hypothesis_true_count == 12
    assert not rep.conclusion_violations and rep.passed
    assert rep.min_conclusion_margin > 0


def test_forward_below_threshold_needs_explore():
    with pytest.raises(InvalidParams):
        run_forward_t21(1, 0, 1, 0.5, 2, seed=1, grid=GRID)


def test_forward_explore_reports_certificates():
    rep = run_forward_t21(1, 0, 1, 0.1, 6, seed=2, grid=GRID, explore=True)
    assert rep.passed and rep.mode == "explore"
    assert rep.conclusion_violations
    params = CriterionParams(gamma=0.1)
    for cert in rep.conclusion_violations:
        ok, _ = reverify_certificate(cert, CriterionKind.T21, params)
        assert ok


def test_determinism_json():
    a = run_conditional("c21", CriterionParams(), 20, seed=9, grid=GRID)
    b = run_conditional("c21", CriterionParams(), 20, seed=9, grid=GRID, workers=3)
    assert a.to_json(timing=False) == b.to_json(timing=False)
    assert "wall_clock_seconds" not in a.to_dict(timing=False)


def test_t23_constant_one_never_counts():
    rep = run_conditional("t23", CriterionParams(c=1, k=1), 5, seed=0, grid=GRID)
    assert rep.hypothesis_true_count == 0
    assert rep.params["half_plane_threshold"] == 2.5
    assert rep.violations_are_findings


def test_conditional_rejects_t21():
    with pytest.raises(InvalidParams):
        run_conditional("t21", CriterionParams(), 2, seed=0)


def test_report_schema(schema):
    jsonschema = pytest.importorskip("jsonschema")
    rep = run_forward_t21(1, 0, 1, 0.1, 3, seed=2, grid=GRID, explore=True)
    jsonschema.validate(json.loads(rep.to_json()), schema("trial_report"))


@pytest.mark.parametrize("kind", ["c23", "c28"])
def test_real_part_reading_has_counterexample(kind):
    # f = z/(1 - 0.3 z): 1 + 4 (z f'/f - 1) = 1 + 1.2 z/(1 - 0.3 z) has Re > 0 on the
    # closed disk, yet z f'/f = 1/(1 - 0.3 z) leaves the lemniscate near z = 1
    f = an.moebius(0.3)
    params = CriterionParams(gamma=4)
    hyp, concl = check_implication(kind, f, params, GRID)
    assert hyp.holds_at_resolution and hyp.min_margin > 0.07
    assert not concl.holds_at_resolution
    cert = make_certificate(0, f, "moebius a=0.3", concl, hyp.min_margin)
    ok, margin = reverify_certificate(cert, kind, params)
    assert ok and margin < -0.02
    assert reverify_hypothesis(cert, kind, params) > 0


def test_margin_sweep_shape():
    t = margin_sweep("t21", CriterionParams(), [2, 0.5, 1], 4, seed=3, grid=GRID)
    assert [r["multiplier"] for r in t.rows] == [0.5, 1.0, 2.0]
    lines = t.to_csv().splitlines()
    assert lines[0] == "multiplier,gamma,min_margin,argmin_id" and len(lines) == 4
    with pytest.raises(InvalidParams):
        margin_sweep("t21", CriterionParams(), [5], 1, seed=0)
    with pytest.raises(InvalidParams):
        margin_sweep("t23", CriterionParams(), [1], 1, seed=0)
