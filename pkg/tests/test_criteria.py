import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lemni import analytic as an
from lemni.criteria import (
    CriterionKind,
    CriterionParams,
    H_func,
    L_func,
    check_implication,
    close_to_convex_quantity,
    conclusion_class,
    criterion_lhs,
    gamma_threshold,
    hypothesis_region,
    t22_target,
    t22_target_map,
)
from lemni.errors import DegenerateParams, EvaluationError, InvalidParams, SubjectMismatch
from lemni.regions import BoundaryPolygonRegion, HalfPlaneShifted, JanowskiDisk
from lemni.subordination import DEFAULT_GRID

K = CriterionKind


def test_threshold_examples():
    assert gamma_threshold(1, 0, 1) == 4
    assert gamma_threshold(1, 0, 0.5) == 6
    assert gamma_threshold(1, 0.5, 1) == 12
    assert gamma_threshold(0, 0, 1) == 0
    with pytest.raises(InvalidParams):
        gamma_threshold(1, 1, 1)
    with pytest.raises(InvalidParams):
        gamma_threshold(1, 0, 0)


def test_H_L_examples():
    assert H_func(1, 1, 0, 1, 4, 1) == 1
    assert H_func(-1, 1, 0, 1, 4, 1) == math.inf
    assert L_func(1, 1, 0, 1, 4) == 1
    with pytest.raises(DegenerateParams):
        H_func(0.0, 0, 0, 1, 4)


abcg = st.tuples(
    st.floats(-1, 1), st.floats(-0.95, 0.95), st.floats(0.05, 1), st.floats(0.1, 50), st.floats(1, 10)
).filter(lambda p: abs(p[0]) + abs(p[1]) > 1e-3)


@settings(max_examples=60, deadline=None)
@given(abcg)
def test_H_at_one_equals_L(p):
    A, B, c, g, k = p
    assert H_func(1.0, A, B, c, g, k) == pytest.approx(L_func(k, A, B, c, g), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(abcg)
def test_H_nonincreasing_L_nondecreasing(p):
    A, B, c, g, k = p
    t = np.linspace(-1, 1, 50)
    assert np.all(np.diff(H_func(t, A, B, c, g, k)) <= 1e-12)
    ks = np.linspace(1, 20, 50)
    assert np.all(np.diff(L_func(ks, A, B, c, g)) >= -1e-12)


def test_forced_parameters():
    p = CriterionParams(gamma=5, A=0.3, B=0.2, c=0.4)
    assert p.for_kind("c22").c == 1
    q = p.for_kind("c23")
    assert (q.A, q.B, q.c) == (1, 0, 1)
    assert p.for_kind(K.C28).A == 1 and p.for_kind(K.C28).c == 0.4
    assert p.for_kind(K.C21) == p


pts = DEFAULT_GRID.points()[::37]


def test_lhs_constant_subjects():
    p = CriterionParams(gamma=7.3)
    assert np.all(criterion_lhs(K.T21, an.const(1.0), p, pts) == 1)
    assert np.allclose(criterion_lhs(K.C21, an.identity(), p, pts), 1, atol=1e-15)
    for kind in [K.C24, K.C26, K.C27]:
        assert np.allclose(criterion_lhs(kind, an.identity(), p, pts), 1, atol=1e-15)
    assert np.allclose(criterion_lhs(K.C29, an.identity(), p, pts), 1, atol=1e-15)


def test_lhs_values_at_zero():
    p = CriterionParams()
    assert criterion_lhs(K.T22, an.const(1.0), p, 0) == pytest.approx(1 / 3)
    assert criterion_lhs(K.T23, an.const(1.0), p, 0) == 1
    assert criterion_lhs(K.C29, an.moebius(0.3), p, 0) == 1


def test_lhs_against_closed_forms():
    # f = z e^{a z}: z f'/f = 1 + a z, z f''/f' = a z (2 + a z) / (1 + a z)
    a, g = 0.4 - 0.2j, 6.0
    f = an.exp_scaled(a)
    zs = pts[1:5]
    s = 1 + a * zs
    t = a * zs * (2 + a * zs) / (1 + a * zs)
    p = CriterionParams(gamma=g)
    assert np.allclose(criterion_lhs(K.C21, f, p, zs), 1 + g * (1 + t - s), rtol=1e-13)
    assert np.allclose(criterion_lhs(K.C24, f, p, zs), 1 + g * (1 + t / 2 - s), rtol=1e-13)
    assert np.allclose(criterion_lhs(K.C27, f, p, zs), 1 + g * (s - 1), rtol=1e-13)
    assert np.allclose(criterion_lhs(K.C29, f, p, zs), s * s * (2 + t - s), rtol=1e-13)
    # p = 1 + b z: T23 lhs = p (p + b z)
    b = 0.15j
    pz = 1 + b * zs
    assert np.allclose(criterion_lhs(K.T23, an.poly([1, b]), p, zs), pz * (pz + b * zs), rtol=1e-14)


def test_subject_mismatch():
    with pytest.raises(SubjectMismatch):
        criterion_lhs(K.T21, an.identity(), CriterionParams(), 0.1)
    with pytest.raises(SubjectMismatch):
        criterion_lhs(K.C21, an.const(1.0), CriterionParams(), 0.1)


@pytest.mark.parametrize("c", [0.2, 0.5, 1.0])
def test_t22_identity_instance(c):
    lhs = criterion_lhs(K.T22, an.q_c_composed(c), CriterionParams(c=c), DEFAULT_GRID.points())
    assert np.max(np.abs(lhs - t22_target(c, DEFAULT_GRID.points()))) < 1e-12


def test_t22_target_examples():
    assert t22_target(0.7, 0) == pytest.approx(1 / 3)
    assert np.allclose(t22_target(1e-14, pts), 1 / 3)
    assert an.evaluate(t22_target_map(0.5), 0.4j) == pytest.approx(t22_target(0.5, 0.4j))
    with pytest.raises(EvaluationError):
        t22_target(1.0, -1.0)


def test_branch_square_identity():
    # (q_c)^2 = 1 + c z on the disk for the principal branch
    for c in (0.1, 0.5, 1.0):
        q = an.evaluate(an.q_c_composed(c), DEFAULT_GRID.points())
        assert np.max(np.abs(q * q - 1 - c * DEFAULT_GRID.points())) < 1e-14


@pytest.mark.parametrize("c", [0.2, 0.5, 0.9])
def test_close_to_convex_bound(c):
    vals = close_to_convex_quantity(c, DEFAULT_GRID.points())
    assert np.min(vals.real) > 1 - c - 1e-9


def test_hypothesis_regions():
    assert hypothesis_region(K.T23, CriterionParams(c=1, k=1)) == HalfPlaneShifted(2.5)
    assert hypothesis_region(K.C23, CriterionParams()) == HalfPlaneShifted(0.0)
    r = hypothesis_region(K.T22, CriterionParams(c=0.5))
    assert isinstance(r, BoundaryPolygonRegion) and r.base_point == pytest.approx(1 / 3)
    assert hypothesis_region(K.C21, CriterionParams(A=0.5, B=-0.2)) == JanowskiDisk(0.5, -0.2)


def test_conclusion_classes():
    assert conclusion_class(K.C22, CriterionParams()).name == "sl"
    spec = conclusion_class(K.T21, CriterionParams(c=0.3))
    assert spec.name == "lemniscate_sub" and spec.c == 0.3
    assert conclusion_class(K.C24, CriterionParams()).name == "cor24"
    assert conclusion_class(K.C26, CriterionParams()) is None


def test_check_implication_identity():
    hyp, concl = check_implication(K.C21, an.identity(), CriterionParams())
    assert hyp.holds_at_resolution and concl.min_margin == 1.0
    hyp, concl = check_implication(K.C26, an.identity(), CriterionParams())
    assert concl is None


def test_kind_parse():
    assert K.parse("T22") is K.T22
    with pytest.raises(InvalidParams):
        K.parse("t99")
