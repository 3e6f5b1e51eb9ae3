"""Target regions with signed membership margins.

All regions are immutable and their predicates are vectorized: pass a
scalar or an array of complex points and get back ``(inside, margin)`` of
the same shape. ``margin > 0`` means strictly inside; the boundary itself
(margin 0) counts as outside because every region here is open.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _polygon
from .analytic import AnalyticMap, evaluate
from .errors import InvalidParams, SelfIntersectingBoundary, TooFewSamples

DEGENERATE_DENOM = 1e-12
CONVEXITY_TOL = 1e-12


def _finish(inside, margin, scalar):
    if scalar:
        return bool(inside), float(margin)
    return inside, margin


def unit_roots(n):
    """``(theta, e^{i theta})`` at ``n`` equispaced angles, exact on the axes.

    ``exp(1j * pi)`` carries a 1e-16 imaginary part, which the square root at
    the lemniscate cusp would inflate to 1e-8.
    """
    theta = 2 * np.pi * np.arange(n) / n
    ring = np.exp(1j * theta)
    re = np.where(np.abs(ring.real) < 1e-15, 0.0, ring.real)
    im = np.where(np.abs(ring.imag) < 1e-15, 0.0, ring.imag)
    return theta, re + 1j * im


def q_eval(c, z):
    """Principal ``sqrt(1 + c z)``, the map of the disk onto the lemniscate region."""
    za = np.asarray(z, dtype=complex)
    out = np.sqrt(1 + c * za)
    return complex(out) if za.ndim == 0 else out


@dataclass(frozen=True)
class Lemniscate:
    """``{w : Re w > 0, |w^2 - 1| < c}``, bounded by the right lobe of a lemniscate."""

    c: float

    def __post_init__(self):
        if not (0 < self.c <= 1):
            raise InvalidParams(f"lemniscate parameter must lie in (0, 1], got {self.c}")

    base_point = 1.0 + 0j

    def contains_with_margin(self, w):
        wa = np.asarray(w, dtype=complex)
        margin = np.minimum(wa.real, self.c - np.abs(wa * wa - 1))
        margin = np.where(np.isnan(margin), -np.inf, margin)
        return _finish(margin > 0, margin, wa.ndim == 0)

    def boundary(self, n):
        theta, ring = unit_roots(n)
        return theta, q_eval(self.c, ring)

    def describe(self):
        return {"region": "lemniscate", "c": self.c}


@dataclass(frozen=True)
class JanowskiDisk:
    """Image of the disk under ``(1 + A z) / (1 + B z)``: ``|w - 1| < |A - B w|``."""

    A: float
    B: float

    def __post_init__(self):
        if abs(self.A) > 1 or abs(self.B) >= 1 or self.A == self.B:
            raise InvalidParams(f"need |A| <= 1, |B| < 1, A != B; got A={self.A}, B={self.B}")

    base_point = 1.0 + 0j

    @property
    def center(self):
        return (1 - self.A * self.B) / (1 - self.B**2)

    @property
    def radius(self):
        return abs(self.A - self.B) / (1 - self.B**2)

    def contains_with_margin(self, w):
        wa = np.asarray(w, dtype=complex)
        den = np.abs(self.A - self.B * wa)
        ok = den >= DEGENERATE_DENOM
        safe = np.where(ok, den, 1.0)
        margin = np.where(ok, (den - np.abs(wa - 1)) / safe, -np.inf)
        margin = np.where(np.isnan(margin), -np.inf, margin)
        return _finish(margin > 0, margin, wa.ndim == 0)

    def boundary(self, n):
        theta, ring = unit_roots(n)
        return theta, self.center + self.radius * ring

    def describe(self):
        return {"region": "janowski", "A": self.A, "B": self.B}


@dataclass(frozen=True)
class HalfPlaneShifted:
    """``{w : Re w > threshold}``; carries no base point."""

    threshold: float

    base_point = None

    def contains_with_margin(self, w):
        wa = np.asarray(w, dtype=complex)
        margin = wa.real - self.threshold
        margin = np.where(np.isnan(margin), -np.inf, margin)
        return _finish(margin > 0, margin, wa.ndim == 0)

    def describe(self):
        return {"region": "half_plane", "threshold": self.threshold}


@dataclass(frozen=True, eq=False)
class BoundaryPolygonRegion:
    """Interior of the closed polygon through ``vertices`` (counterclockwise).

    Membership is winding number 1; the margin is the distance to the
    polygon, signed by membership.
    """

    vertices: np.ndarray
    base_point: complex

    def __post_init__(self):
        if len(self.vertices) < 512:
            raise TooFewSamples("a boundary polygon needs at least 512 vertices")

    def contains_with_margin(self, w):
        wa = np.asarray(w, dtype=complex)
        flat = wa.reshape(-1)
        finite = np.isfinite(flat)
        pts = np.where(finite, flat, 0)
        wind, dist = _polygon.winding_and_distance(
            self.vertices.real.copy(), self.vertices.imag.copy(), pts.real.copy(), pts.imag.copy()
        )
        inside = (wind == 1) & (dist > 0) & finite
        margin = np.where(inside, dist, -dist)
        margin = np.where(finite, margin, -np.inf).reshape(wa.shape)
        return _finish(inside.reshape(wa.shape), margin, wa.ndim == 0)

    def boundary(self, n=None):
        k = len(self.vertices)
        return 2 * np.pi * np.arange(k) / k, self.vertices.copy()

    def describe(self):
        return {"region": "polygon", "vertices": len(self.vertices),
                "base_point": [self.base_point.real, self.base_point.imag]}


@dataclass(frozen=True)
class CenteredDisk:
    """``{w : |w - 1| < radius}`` with the unnormalized margin ``radius - |w - 1|``."""

    radius: float

    base_point = 1.0 + 0j

    def contains_with_margin(self, w):
        wa = np.asarray(w, dtype=complex)
        margin = self.radius - np.abs(wa - 1)
        margin = np.where(np.isnan(margin), -np.inf, margin)
        return _finish(margin > 0, margin, wa.ndim == 0)

    def boundary(self, n):
        theta, ring = unit_roots(n)
        return theta, 1 + self.radius * ring

    def describe(self):
        return {"region": "disk_about_one", "radius": self.radius}


def contains_with_margin(region, w):
    """Dispatch helper: ``(inside, margin)`` for ``w`` in ``region``."""
    return region.contains_with_margin(w)


def boundary_samples(region, n):
    """Counterclockwise boundary points of ``region`` (at least 16)."""
    if n < 16:
        raise TooFewSamples(f"need n >= 16 boundary samples, got {n}")
    return region.boundary(n)[1]


def winding_number(vertices, point) -> int:
    v = np.asarray(vertices, dtype=complex)
    p = np.atleast_1d(np.asarray(point, dtype=complex))
    wind, _ = _polygon.winding_and_distance(v.real.copy(), v.imag.copy(), p.real.copy(), p.imag.copy())
    return int(wind[0])


def region_from_univalent_boundary(g: AnalyticMap, r: float, n: int = 1024) -> BoundaryPolygonRegion:
    """Polygon through ``g(r e^{i theta_j})`` with base point ``g(0)``.

    ``g`` must be univalent on ``|z| <= r``; a boundary that crosses itself or
    winds around ``g(0)`` other than once is rejected.
    """
    if not (0 < r < 1):
        raise InvalidParams(f"radius must lie in (0, 1), got {r}")
    if n < 512:
        raise TooFewSamples(f"need n >= 512 boundary vertices, got {n}")
    theta = 2 * np.pi * np.arange(n) / n
    verts = np.asarray(evaluate(g, r * np.exp(1j * theta)), dtype=complex)
    base = complex(evaluate(g, 0.0))
    w = winding_number(verts, base)
    if w != 1:
        raise SelfIntersectingBoundary(f"boundary winds {w} times around g(0)")
    i, j = _polygon.first_self_intersection(verts.real.copy(), verts.imag.copy())
    if i >= 0:
        raise SelfIntersectingBoundary(f"boundary edges {i} and {j} intersect")
    return BoundaryPolygonRegion(verts, base)


def is_convex_boundary(points) -> bool:
    """True when every turn of the closed counterclockwise polyline is left or straight."""
    p = np.asarray(points, dtype=complex)
    if len(p) < 3:
        raise TooFewSamples("need at least 3 points")
    d = np.roll(p, -1) - p
    nxt = np.roll(d, -1)
    cross = d.real * nxt.imag - d.imag * nxt.real
    return bool(np.all(cross >= -CONVEXITY_TOL))


# ------------------------------------------------------------------ export


def boundary_csv(region, n) -> str:
    if n < 16:
        raise TooFewSamples(f"need n >= 16 boundary samples, got {n}")
    theta, w = region.boundary(n)
    lines = ["theta,re,im"]
    lines += [f"{float(t)!r},{float(v.real)!r},{float(v.imag)!r}" for t, v in zip(theta, w)]
    return "\n".join(lines) + "\n"


def boundary_svg(region, n) -> str:
    """Closed SVG polyline of the boundary; imaginary axis points up."""
    w = boundary_samples(region, n)
    x, y = w.real, -w.imag
    xmin, xmax, ymin, ymax = x.min(), x.max(), y.min(), y.max()
    span = max(xmax - xmin, ymax - ymin) or 1.0
    pad = 0.05 * span
    stroke = 0.002 * span
    pts = " ".join(f"{a:.9g},{b:.9g}" for a, b in zip(np.append(x, x[0]), np.append(y, y[0])))
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{xmin - pad:.9g} {ymin - pad:.9g} {xmax - xmin + 2 * pad:.9g} {ymax - ymin + 2 * pad:.9g}">\n'
        f'  <polyline fill="none" stroke="black" stroke-width="{stroke:.9g}" points="{pts}"/>\n'
        "</svg>\n"
    )


def region_from_spec(name: str, c=None, A=None, B=None, threshold=None):
    if name == "lemniscate":
        return Lemniscate(1.0 if c is None else c)
    if name == "janowski":
        return JanowskiDisk(1.0 if A is None else A, 0.0 if B is None else B)
    if name == "half_plane":
        return HalfPlaneShifted(0.0 if threshold is None else threshold)
    raise InvalidParams(f"unknown region {name!r}")


__all__ = [
    "q_eval",
    "unit_roots",
    "Lemniscate",
    "JanowskiDisk",
    "HalfPlaneShifted",
    "CenteredDisk",
    "BoundaryPolygonRegion",
    "contains_with_margin",
    "boundary_samples",
    "region_from_univalent_boundary",
    "is_convex_boundary",
    "winding_number",
    "boundary_csv",
    "boundary_svg",
    "region_from_spec",
]
