"""Adaptive Gauss-Legendre quadrature for batched integrands."""

from functools import lru_cache

import numpy as np

from .errors import QuadratureNotConverged


@lru_cache(maxsize=None)
def _nodes(order):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def _panel(func, a, b, order):
    x, w = _nodes(order)
    half = 0.5 * (b - a)
    s = a + half * (x + 1.0)
    vals = np.asarray(func(s))
    return half * np.tensordot(w, vals, axes=(0, 0))


def adaptive_gauss_legendre(func, a=0.0, b=1.0, tol=1e-10, max_depth=20, order=10):
    """Integrate ``func`` over ``[a, b]`` by panel bisection.

    ``func`` receives a 1-d array of abscissae of length ``m`` and returns an
    array whose leading axis has length ``m``; trailing axes are integrated
    independently (one integral per target), all on a shared panel
    subdivision. A panel is accepted once the two-half estimate agrees with
    the whole-panel estimate to within its share of ``tol`` for every target.
    """
    total = b - a
    if total == 0:
        return np.zeros(np.shape(func(np.array([a])))[1:], dtype=complex)
    result = 0.0
    stack = [(a, b, 0, _panel(func, a, b, order))]
    while stack:
        lo, hi, depth, whole = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _panel(func, lo, mid, order)
        right = _panel(func, mid, hi, order)
        fine = left + right
        err = np.max(np.abs(fine - whole)) if np.size(fine) else 0.0
        if not np.isfinite(err):
            raise QuadratureNotConverged(f"non-finite integrand on [{lo}, {hi}]")
        if err <= tol * (hi - lo) / total:
            result = result + fine
            continue
        if depth + 1 > max_depth:
            raise QuadratureNotConverged(
                f"tolerance {tol:g} unmet at depth {max_depth} (error {err:.3g})"
            )
        stack.append((mid, hi, depth + 1, right))
        stack.append((lo, mid, depth + 1, left))
    return result
