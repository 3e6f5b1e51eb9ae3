"""Compiled kernels for closed polygons given as complex vertex arrays."""

import numpy as np
from numba import njit


@njit(cache=True)
def _is_left(x0, y0, x1, y1, px, py):
    return (x1 - x0) * (py - y0) - (px - x0) * (y1 - y0)


@njit(cache=True)
def _seg_dist2(x0, y0, x1, y1, px, py):
    dx = x1 - x0
    dy = y1 - y0
    L = dx * dx + dy * dy
    t = 0.0
    if L > 0.0:
        t = ((px - x0) * dx + (py - y0) * dy) / L
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
    ex = x0 + t * dx - px
    ey = y0 + t * dy - py
    return ex * ex + ey * ey


@njit(cache=True)
def winding_and_distance(vx, vy, px, py):
    """Winding number and Euclidean distance to the boundary, per point."""
    n = vx.shape[0]
    m = px.shape[0]
    wind = np.zeros(m, dtype=np.int64)
    dist = np.empty(m)
    for k in range(m):
        x = px[k]
        y = py[k]
        w = 0
        best = np.inf
        for j in range(n):
            x0 = vx[j]
            y0 = vy[j]
            x1 = vx[(j + 1) % n]
            y1 = vy[(j + 1) % n]
            if y0 <= y:
                if y1 > y and _is_left(x0, y0, x1, y1, x, y) > 0.0:
                    w += 1
            elif y1 <= y and _is_left(x0, y0, x1, y1, x, y) < 0.0:
                w -= 1
            d2 = _seg_dist2(x0, y0, x1, y1, x, y)
            if d2 < best:
                best = d2
        wind[k] = w
        dist[k] = np.sqrt(best)
    return wind, dist


@njit(cache=True)
def _on_segment(x0, y0, x1, y1, px, py):
    return min(x0, x1) <= px <= max(x0, x1) and min(y0, y1) <= py <= max(y0, y1)


@njit(cache=True)
def first_self_intersection(vx, vy):
    """Index pair of the first two non-adjacent edges that meet, else (-1, -1)."""
    n = vx.shape[0]
    for i in range(n):
        ax, ay = vx[i], vy[i]
        bx, by = vx[(i + 1) % n], vy[(i + 1) % n]
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            cx, cy = vx[j], vy[j]
            dx, dy = vx[(j + 1) % n], vy[(j + 1) % n]
            d1 = _is_left(cx, cy, dx, dy, ax, ay)
            d2 = _is_left(cx, cy, dx, dy, bx, by)
            d3 = _is_left(ax, ay, bx, by, cx, cy)
            d4 = _is_left(ax, ay, bx, by, dx, dy)
            if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
                (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
            ):
                return i, j
            if d1 == 0 and _on_segment(cx, cy, dx, dy, ax, ay):
                return i, j
            if d2 == 0 and _on_segment(cx, cy, dx, dy, bx, by):
                return i, j
            if d3 == 0 and _on_segment(ax, ay, bx, by, cx, cy):
                return i, j
            if d4 == 0 and _on_segment(ax, ay, bx, by, dx, dy):
                return i, j
    return -1, -1
