"""Operators, thresholds and target regions of the lemniscate criteria.

Each :class:`CriterionKind` fixes a subject type (``p`` with ``p(0) = 1`` or a
normalized ``f``), a left-hand-side operator, the region that operator must
stay in, and the class the subject then belongs to. The table lives in
``_KINDS``; everything else reads from it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .analytic import AnalyticMap, Const, evaluate, mul, q_c_composed, z
from .errors import DegenerateParams, EvaluationError, InvalidParams, SubjectMismatch
from .regions import HalfPlaneShifted, JanowskiDisk, region_from_univalent_boundary
from .subordination import (
    DEFAULT_GRID,
    ClassSpec,
    DiskGrid,
    PointMap,
    Verdict,
    check_subordination,
    class_membership,
    safe_ratio,
    cor24_conclusion,
    cor27_conclusion,
    lemniscate_sub,
    sl,
    sstar_qc,
)

T22_RADIUS = 0.99
T22_VERTICES = 1024


class CriterionKind(str, enum.Enum):
    T21 = "t21"
    C21 = "c21"
    C22 = "c22"
    C23 = "c23"
    C24 = "c24"
    C25 = "c25"
    C26 = "c26"
    C27 = "c27"
    C28 = "c28"
    C29 = "c29"
    T22 = "t22"
    T23 = "t23"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidParams(f"unknown kind {value!r}; known: {[k.value for k in cls]}") from None

    @property
    def subject(self):
        return _KINDS[self].subject

    @property
    def has_gamma(self):
        return _KINDS[self].gamma


@dataclass(frozen=True)
class _KindInfo:
    subject: str  # "p" or "f"
    gamma: bool
    at_zero: complex
    forced: dict  # parameters fixed by the statement


_KINDS = {
    CriterionKind.T21: _KindInfo("p", True, 1, {}),
    CriterionKind.C21: _KindInfo("f", True, 1, {}),
    CriterionKind.C22: _KindInfo("f", True, 1, {"c": 1.0}),
    CriterionKind.C23: _KindInfo("f", True, 1, {"A": 1.0, "B": 0.0, "c": 1.0}),
    CriterionKind.C24: _KindInfo("f", True, 1, {}),
    CriterionKind.C25: _KindInfo("f", True, 1, {"c": 1.0}),
    CriterionKind.C26: _KindInfo("f", True, 1, {"c": 1.0}),
    CriterionKind.C27: _KindInfo("f", True, 1, {}),
    CriterionKind.C28: _KindInfo("f", True, 1, {"A": 1.0, "B": 0.0}),
    # (zf'/f)^2 (2 + zf''/f' - zf'/f) -> 1 * (2 + 0 - 1) at the origin
    CriterionKind.C29: _KindInfo("f", False, 1, {}),
    CriterionKind.T22: _KindInfo("p", False, 1 / 3, {}),
    CriterionKind.T23: _KindInfo("p", False, 1, {}),
}


def gamma_threshold(A, B, c):
    """Smallest admissible ``gamma``: ``2 (|A| + |B|) (1 + c) / (c (1 - |B|))``."""
    if not (abs(B) < 1) or not (0 < c <= 1) or abs(A) > 1:
        raise InvalidParams(f"need |A| <= 1, |B| < 1, 0 < c <= 1; got A={A}, B={B}, c={c}")
    return 2 * (abs(A) + abs(B)) * (1 + c) / (c * (1 - abs(B)))


@dataclass(frozen=True)
class CriterionParams:
    gamma: float = 4.0
    A: float = 1.0
    B: float = 0.0
    c: float = 1.0
    k: float = 1.0

    def validate(self):
        if abs(self.A) > 1 or not abs(self.B) < 1:
            raise InvalidParams(f"need |A| <= 1 and |B| < 1; got A={self.A}, B={self.B}")
        if not (0 < self.c <= 1):
            raise InvalidParams(f"need 0 < c <= 1; got c={self.c}")
        if not self.gamma > 0:
            raise InvalidParams(f"need gamma > 0; got {self.gamma}")
        if self.k < 1:
            raise InvalidParams(f"need k >= 1; got {self.k}")
        return self

    def for_kind(self, kind) -> "CriterionParams":
        """Copy with the parameters the statement of ``kind`` pins down."""
        kind = CriterionKind.parse(kind)
        return replace(self, **_KINDS[kind].forced).validate()

    @property
    def threshold(self):
        return gamma_threshold(self.A, self.B, self.c)

    @property
    def meets_threshold(self):
        """Whether ``gamma`` meets the threshold (``False`` means exploratory)."""
        return self.gamma >= self.threshold

    @property
    def half_plane_threshold(self):
        return 1 + self.c * (1 + self.k / 2)

    def to_dict(self):
        return {"gamma": float(self.gamma), "A": float(self.A), "B": float(self.B), "c": float(self.c), "k": float(self.k)}


def _check_abk(A, B, c, gamma, k):
    if A == 0 and B == 0:
        raise DegenerateParams("A = B = 0 makes the bound degenerate")
    if not (0 < c <= 1) or gamma <= 0 or k < 1 or abs(B) >= 1 or abs(A) > 1:
        raise InvalidParams("need |A| <= 1, |B| < 1, 0 < c <= 1, gamma > 0, k >= 1")


def H_func(t, A, B, c, gamma, k=1.0):
    """Lower bound of the Janowski preimage modulus at a Jack point, as a function of ``t = cos(theta)``.

    Returns ``+inf`` where the denominator vanishes.
    """
    _check_abk(A, B, c, gamma, k)
    t = np.asarray(t, dtype=float)
    K = 2 * c + c * gamma * k
    r1 = np.sqrt(np.maximum(1 + 2 * c * t + c * c, 0.0))
    r2 = np.sqrt(np.maximum(4 + 4 * K * t + K * K, 0.0))
    den = 2 * abs(A) * r1 + abs(B) * r2
    with np.errstate(divide="ignore"):
        out = np.where(den > 0, c * k * gamma / np.where(den > 0, den, 1.0), np.inf)
    return float(out) if out.ndim == 0 else out


def L_func(k, A, B, c, gamma):
    """``H(1)`` as a function of the Jack constant ``k``."""
    k = np.asarray(k, dtype=float)
    _check_abk(A, B, c, gamma, float(np.min(k)) if k.size else 1.0)
    out = c * k * gamma / (2 * abs(A) * (1 + c) + abs(B) * (2 + 2 * c + c * gamma * k))
    return float(out) if out.ndim == 0 else out


# --------------------------------------------------------------- operators


def _require_subject(kind, subject):
    info = _KINDS[kind]
    s0 = complex(evaluate(subject, 0.0))
    if info.subject == "p":
        if abs(s0 - 1) > 1e-10:
            raise SubjectMismatch(f"{kind.value} needs p(0) = 1, got {s0}")
    else:
        d0 = complex(evaluate(subject.derivative(), 0.0))
        if abs(s0) > 1e-10 or abs(d0 - 1) > 1e-10:
            raise SubjectMismatch(f"{kind.value} needs a normalized f, got f(0)={s0}, f'(0)={d0}")


def criterion_operator(kind, subject: AnalyticMap, params: CriterionParams) -> PointMap:
    """The left-hand side of ``kind`` as a vectorized map with its value at 0 tabulated."""
    kind = CriterionKind.parse(kind)
    params = params.for_kind(kind)
    _require_subject(kind, subject)
    g = params.gamma
    d1 = subject.derivative()

    if _KINDS[kind].subject == "p":

        def lhs(zs):
            p = evaluate(subject, zs)
            zdp = zs * evaluate(d1, zs)
            if kind is CriterionKind.T21:
                return 1 + g * safe_ratio(zdp, p)
            if kind is CriterionKind.T22:
                return p**3 / 3 + zdp
            return p * (p + zdp)

    else:
        d2 = d1.derivative()

        def lhs(zs):
            f = evaluate(subject, zs)
            df = evaluate(d1, zs)
            s = safe_ratio(zs * df, f)  # z f'/f
            t = safe_ratio(zs * evaluate(d2, zs), df)  # z f''/f'
            if kind in (CriterionKind.C21, CriterionKind.C22, CriterionKind.C23):
                return 1 + g * (1 + t - s)
            if kind in (CriterionKind.C24, CriterionKind.C25):
                return 1 + g * (1 + t / 2 - s)
            if kind is CriterionKind.C26:
                return 1 + g * t / 2
            if kind in (CriterionKind.C27, CriterionKind.C28):
                return 1 + g * (s - 1)
            return s * s * (2 + t - s)

    return PointMap(lhs, complex(_KINDS[kind].at_zero), kind.value)


def criterion_lhs(kind, subject: AnalyticMap, params: CriterionParams, z):
    """Value of the left-hand side of ``kind`` at ``z`` (scalar or array)."""
    return criterion_operator(kind, subject, params)(z)


def t22_target_map(c) -> AnalyticMap:
    """``h = q^3 / 3 + z q'`` with ``q = sqrt(1 + c z)``, as an expression tree."""
    q = q_c_composed(c)
    return mul(Const(1 / 3), q, q, q) + mul(z, q.derivative())


def t22_target(c, z):
    """``(1 + c z)^{3/2} / 3 + c z / (2 sqrt(1 + c z))``; equals 1/3 at the origin."""
    za = np.asarray(z, dtype=complex)
    q = np.sqrt(1 + c * za)
    if np.any((q == 0) & (za != 0)):
        raise EvaluationError("pole at the branch point z = -1/c", point=-1 / c)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = q**3 / 3 + np.where(za == 0, 0, c * za / (2 * np.where(q == 0, 1, q)))
    return complex(out) if za.ndim == 0 else out


@lru_cache(maxsize=32)
def t22_region(c, r=T22_RADIUS, n=T22_VERTICES):
    """Polygon approximating ``h(|z| < r)``, based at ``h(0) = 1/3``."""
    return region_from_univalent_boundary(t22_target_map(c), r, n)


def hypothesis_region(kind, params: CriterionParams):
    kind = CriterionKind.parse(kind)
    params = params.for_kind(kind)
    if kind in (CriterionKind.C23, CriterionKind.C28):
        return HalfPlaneShifted(0.0)
    if kind in (CriterionKind.T23, CriterionKind.C29):
        return HalfPlaneShifted(params.half_plane_threshold)
    if kind is CriterionKind.T22:
        return t22_region(float(params.c))
    return JanowskiDisk(params.A, params.B)


def conclusion_class(kind, params: CriterionParams) -> ClassSpec | None:
    """Class the subject must then belong to; ``None`` where only univalence is claimed."""
    kind = CriterionKind.parse(kind)
    params = params.for_kind(kind)
    if kind in (CriterionKind.T21, CriterionKind.T22, CriterionKind.T23):
        return lemniscate_sub(params.c)
    if kind in (CriterionKind.C22, CriterionKind.C23):
        return sl()
    if kind in (CriterionKind.C21, CriterionKind.C29):
        return sstar_qc(params.c)
    if kind is CriterionKind.C24:
        return cor24_conclusion(params.c)
    if kind in (CriterionKind.C27, CriterionKind.C28):
        return cor27_conclusion(params.c)
    return None


def check_implication(
    kind, subject: AnalyticMap, params: CriterionParams, grid: DiskGrid = DEFAULT_GRID
) -> tuple[Verdict, Verdict | None]:
    """Hypothesis and conclusion verdicts for one subject; no logic is applied."""
    kind = CriterionKind.parse(kind)
    lhs = criterion_operator(kind, subject, params)
    hyp = check_subordination(lhs, hypothesis_region(kind, params), grid)
    spec = conclusion_class(kind, params)
    concl = None if spec is None else class_membership(subject, spec, grid)
    return hyp, concl


def hypothesis_margin_at(kind, subject, params, z0) -> float:
    lhs = criterion_lhs(kind, subject, params, complex(z0))
    return hypothesis_region(kind, params).contains_with_margin(lhs)[1]


def close_to_convex_quantity(c, zs):
    """``1 + c z + (1 + z q''/q')`` from the exact derivative trees of ``q = sqrt(1 + c z)``."""
    q = q_c_composed(c)
    d1 = q.derivative()
    d2 = d1.derivative()
    zs = np.asarray(zs, dtype=complex)
    return 1 + c * zs + (1 + zs * evaluate(d2, zs) / evaluate(d1, zs))


__all__ = [
    "CriterionKind",
    "CriterionParams",
    "gamma_threshold",
    "H_func",
    "L_func",
    "criterion_operator",
    "criterion_lhs",
    "t22_target",
    "t22_target_map",
    "t22_region",
    "hypothesis_region",
    "conclusion_class",
    "check_implication",
    "hypothesis_margin_at",
    "close_to_convex_quantity",
]
