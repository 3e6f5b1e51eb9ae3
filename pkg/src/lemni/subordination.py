"""Containment, subordination and class-membership verdicts on disk grids.

A negative ``min_margin`` is a proof of failure: the witness point maps
outside the region. A positive one only says the inclusion holds at the
sampled resolution, and every report labels it that way.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .analytic import AnalyticMap, evaluate
from .errors import BasePointMismatch, InvalidParams, NonNormalized
from .regions import CenteredDisk, JanowskiDisk, Lemniscate

BASE_TOL = 1e-10
NORMALIZATION_TOL = 1e-10
R_MAX = 0.99

DEFAULT_RADII = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99)


@dataclass(frozen=True)
class DiskGrid:
    """Polar sampling of the disk, radius-major and angle-minor."""

    radii: tuple = DEFAULT_RADII
    n_angles: int = 512

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=float)
        if r.size == 0:
            raise InvalidParams("grid needs at least one radius")
        if np.any(r <= 0) or np.any(r > R_MAX) or np.any(np.diff(r) <= 0):
            raise InvalidParams(f"radii must increase within (0, {R_MAX}]")
        if self.n_angles < 64:
            raise InvalidParams("grid needs at least 64 angles per radius")

    @property
    def r_max(self):
        return self.radii[-1]

    def points(self) -> np.ndarray:
        theta = 2 * np.pi * np.arange(self.n_angles) / self.n_angles
        ring = np.exp(1j * theta)
        return (np.asarray(self.radii)[:, None] * ring[None, :]).reshape(-1)

    def __len__(self):
        return len(self.radii) * self.n_angles


DEFAULT_GRID = DiskGrid()


def _json_float(x):
    return float(x) if np.isfinite(x) else None


@dataclass(frozen=True)
class Verdict:
    holds_at_resolution: bool
    min_margin: float
    witness: complex
    samples_checked: int

    @property
    def status(self):
        return "holds at resolution" if self.holds_at_resolution else "fails"

    def to_dict(self):
        return {
            "holds": self.holds_at_resolution,
            "status": self.status,
            "min_margin": _json_float(self.min_margin),
            "witness": {"re": float(self.witness.real), "im": float(self.witness.imag)},
            "samples": self.samples_checked,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class PointMap:
    """A vectorized map with a tabulated value at the removable point 0.

    Used for quotients such as ``z f'/f`` and for criterion operators, whose
    value at the origin is known analytically but evaluates as 0/0.
    """

    func: object
    at_zero: complex
    label: str = ""

    def __call__(self, z):
        za = np.asarray(z, dtype=complex)
        flat = za.reshape(-1)
        out = np.empty(flat.shape, dtype=complex)
        zero = flat == 0
        out[zero] = self.at_zero
        if not np.all(zero):
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                out[~zero] = self.func(flat[~zero])
        out = out.reshape(za.shape)
        return complex(out) if za.ndim == 0 else out


def value_at_zero(f):
    if isinstance(f, PointMap):
        return complex(f.at_zero)
    return complex(evaluate(f, 0.0) if isinstance(f, AnalyticMap) else f(0.0))


def _reduce(margins, points):
    margins = np.where(np.isnan(margins), -np.inf, margins)
    idx = int(np.argmin(margins))  # first index on ties
    m = float(margins[idx])
    return Verdict(m > 0, m, complex(points[idx]), int(points.size))


def check_containment(f, region, grid: DiskGrid = DEFAULT_GRID) -> Verdict:
    """Minimum membership margin of ``f(z)`` in ``region`` over the grid."""
    pts = grid.points()
    w = np.asarray(f(pts), dtype=complex)
    _, margins = region.contains_with_margin(w)
    return _reduce(np.asarray(margins, dtype=float), pts)


def check_subordination(f, region, grid: DiskGrid = DEFAULT_GRID) -> Verdict:
    """Base-point check ``f(0) = b`` followed by containment of ``f(grid)``.

    Regions without a base point (half-planes) get the containment check only.
    """
    base = getattr(region, "base_point", None)
    if base is not None:
        f0 = value_at_zero(f)
        if not abs(f0 - base) <= BASE_TOL:
            raise BasePointMismatch(f0, base)
    return check_containment(f, region, grid)


# ------------------------------------------------------------ class specs


@dataclass(frozen=True)
class ClassSpec:
    """A membership class; ``name`` is one of :data:`CLASS_NAMES`."""

    name: str
    c: float = 1.0
    A: float = 1.0
    B: float = 0.0

    def __post_init__(self):
        if self.name not in CLASS_NAMES:
            raise InvalidParams(f"unknown class {self.name!r}; known: {sorted(CLASS_NAMES)}")

    def region(self):
        if self.name in ("sstar_qc", "lemniscate_sub"):
            return Lemniscate(self.c)
        if self.name == "sl":
            return Lemniscate(1.0)
        if self.name == "janowski":
            return JanowskiDisk(self.A, self.B)
        return CenteredDisk(self.c)

    def describe(self):
        if self.name == "sl":
            return {"class": "sl"}
        if self.name == "janowski":
            return {"class": "janowski", "A": self.A, "B": self.B}
        return {"class": self.name, "c": self.c}


CLASS_NAMES = ("sstar_qc", "sl", "janowski", "cor24", "cor27", "lemniscate_sub")


def sstar_qc(c):
    return ClassSpec("sstar_qc", c=c)


def sl():
    return ClassSpec("sl", c=1.0)


def janowski(A, B):
    return ClassSpec("janowski", A=A, B=B)


def cor24_conclusion(c):
    return ClassSpec("cor24", c=c)


def cor27_conclusion(c):
    return ClassSpec("cor27", c=c)


def lemniscate_sub(c):
    """Direct subordination ``p < sqrt(1 + c z)`` for a subject ``p`` with ``p(0) = 1``."""
    return ClassSpec("lemniscate_sub", c=c)


def safe_ratio(num, den):
    """``num / den`` with NaN where ``|den| < 1e-300``.

    Divides through ``conj(den) / |den|^2`` so that ``x / x`` is exactly 1;
    region margins map the NaN of a vanishing denominator to ``-inf``.
    """
    num, den = np.broadcast_arrays(np.asarray(num, dtype=complex), np.asarray(den, dtype=complex))
    out = np.full(num.shape, np.nan, dtype=complex)
    mag = np.abs(den)
    ok = mag >= 1e-300
    plain = ok & ((mag > 1e100) | (mag < 1e-100))
    conj = ok & ~plain
    nr, ni = num[conj].real, num[conj].imag
    dr, di = den[conj].real, den[conj].imag
    norm = dr * dr + di * di
    out[conj] = (nr * dr + ni * di) / norm + 1j * ((ni * dr - nr * di) / norm)
    out[plain] = num[plain] / den[plain]
    return out


def starlike_quotient(f: AnalyticMap) -> PointMap:
    """``z f'(z) / f(z)`` with value 1 at the removable point."""
    df = f.derivative()

    def q(zs):
        return safe_ratio(zs * evaluate(df, zs), evaluate(f, zs))

    return PointMap(q, 1.0 + 0j, "z f'/f")


def class_quotient(f, spec: ClassSpec) -> PointMap:
    """The function whose image decides membership of ``f`` in ``spec``."""
    if spec.name == "lemniscate_sub":
        return PointMap(lambda zs: evaluate(f, zs), value_at_zero(f), "p")
    if spec.name in ("sstar_qc", "sl", "janowski"):
        return starlike_quotient(f)
    if spec.name == "cor24":
        df = f.derivative()

        def q24(zs):
            ratio = safe_ratio(zs, evaluate(f, zs))
            return ratio * ratio * evaluate(df, zs)

        return PointMap(q24, 1.0 + 0j, "(z/f)^2 f'")
    if spec.name == "cor27":

        def q27(zs):
            ratio = safe_ratio(evaluate(f, zs), zs)
            return ratio * ratio

        return PointMap(q27, 1.0 + 0j, "(f/z)^2")
    raise InvalidParams(spec.name)  # pragma: no cover


def check_normalized(f: AnalyticMap):
    f0 = complex(evaluate(f, 0.0))
    d0 = complex(evaluate(f.derivative(), 0.0))
    if abs(f0) > NORMALIZATION_TOL or abs(d0 - 1) > NORMALIZATION_TOL:
        raise NonNormalized(f"need f(0) = 0 and f'(0) = 1; got f(0) = {f0}, f'(0) = {d0}")


def class_membership(f: AnalyticMap, spec: ClassSpec, grid: DiskGrid = DEFAULT_GRID) -> Verdict:
    """Verdict for ``f`` in the class described by ``spec``.

    A zero of ``f`` inside the grid makes the quotient blow up and is
    reported as a failure with that grid point as witness.
    """
    if spec.name != "lemniscate_sub":
        check_normalized(f)
    return check_subordination(class_quotient(f, spec), spec.region(), grid)


def class_margin_at(f, spec: ClassSpec, z0) -> float:
    """Standalone margin of ``f`` for ``spec`` at a single point."""
    w = class_quotient(f, spec)(complex(z0))
    return spec.region().contains_with_margin(w)[1]


__all__ = [
    "DiskGrid",
    "DEFAULT_GRID",
    "Verdict",
    "PointMap",
    "ClassSpec",
    "check_containment",
    "check_subordination",
    "class_membership",
    "class_quotient",
    "class_margin_at",
    "starlike_quotient",
    "sstar_qc",
    "sl",
    "janowski",
    "cor24_conclusion",
    "cor27_conclusion",
    "lemniscate_sub",
]
