"""Compiled enumeration of convex lattice polygons with unimodular normal forms.

Same walk and same normal form as the pure Python versions in
:mod:`adjoint_chains.polygon_lab`, which serve as the reference in tests. The
Python versions are fine up to a 4x4 box; the exhaustive 6x6 scan visits about
1.6 million polygons and needs compiled loops.
"""

from __future__ import annotations

import numba
import numpy as np

KMAX = 24  # far above the vertex count of any convex polygon in [0, 8]^2
PAD = np.iinfo(np.int16).max


@numba.njit(cache=True)
def _ext_gcd(a, b):
    # iterative; returns (g, x, y) with a*x + b*y == g >= 0
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b != 0:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@numba.njit(cache=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@numba.njit(cache=True)
def _image(xs, ys, k, i, out):
    """Frame at edge ``i`` of a ccw list written into ``out[0:2k]``."""
    x0 = xs[i]
    y0 = ys[i]
    i1 = (i + 1) % k
    dx = xs[i1] - x0
    dy = ys[i1] - y0
    g = _gcd(dx, dy)
    ux = dx // g
    uy = dy // g
    _, a, b = _ext_gcd(ux, uy)
    i2 = (i + 2) % k
    x = xs[i2] - x0
    y = ys[i2] - y0
    wx = a * x + b * y
    wy = -uy * x + ux * y
    s = -(wx // wy)
    for j in range(k):
        jj = (i + j) % k
        x = xs[jj] - x0
        y = ys[jj] - y0
        ny = -uy * x + ux * y
        out[2 * j] = a * x + b * y + s * ny
        out[2 * j + 1] = ny


@numba.njit(cache=True)
def _normal_form(xs, ys, k, best, tmp, mx, my):
    """Least frame image over both orientations; written into ``best[0:2k]``."""
    shortest = 1 << 30
    for i in range(k):
        g = _gcd(xs[(i + 1) % k] - xs[i], ys[(i + 1) % k] - ys[i])
        if g < shortest:
            shortest = g
    for j in range(k):
        mx[j] = -xs[k - 1 - j]
        my[j] = ys[k - 1 - j]
    have = False
    for orient in range(2):
        cx = xs if orient == 0 else mx
        cy = ys if orient == 0 else my
        for i in range(k):
            if _gcd(cx[(i + 1) % k] - cx[i], cy[(i + 1) % k] - cy[i]) != shortest:
                continue
            _image(cx, cy, k, i, tmp)
            if not have:
                for t in range(2 * k):
                    best[t] = tmp[t]
                have = True
                continue
            for t in range(2 * k):
                if tmp[t] != best[t]:
                    if tmp[t] < best[t]:
                        for u in range(2 * k):
                            best[u] = tmp[u]
                    break


@numba.njit(cache=True)
def _walk(box, x0, fill, nf_out, poly_out):
    """DFS from the bottom vertex ``(x0, 0)``; returns the number of polygons.

    With ``fill`` set, row ``r`` of ``nf_out`` gets ``k`` then the normal form
    and row ``r`` of ``poly_out`` gets ``k`` then the vertices, both padded.
    """
    n = (box + 1) * (box + 1)
    px = np.empty(n, np.int64)
    py = np.empty(n, np.int64)
    for idx in range(n):
        px[idx] = idx % (box + 1)
        py[idx] = idx // (box + 1)
    path = np.empty(KMAX + 1, np.int64)
    ptr = np.empty(KMAX + 2, np.int64)
    minx = np.empty(KMAX + 2, np.int64)
    xs = np.empty(KMAX, np.int64)
    ys = np.empty(KMAX, np.int64)
    best = np.empty(2 * KMAX, np.int64)
    tmp = np.empty(2 * KMAX, np.int64)
    mx = np.empty(KMAX, np.int64)
    my = np.empty(KMAX, np.int64)

    start = x0  # index of (x0, 0)
    path[0] = start
    minx[1] = x0
    d = 1
    ptr[1] = start + 1
    count = 0
    while d >= 1:
        j = ptr[d]
        if j >= n:
            d -= 1
            continue
        ptr[d] = j + 1
        wx = px[j]
        wy = py[j]
        lx = px[path[d - 1]]
        ly = py[path[d - 1]]
        if d >= 2:
            qx = px[path[d - 2]]
            qy = py[path[d - 2]]
            if (lx - qx) * (wy - ly) - (ly - qy) * (wx - lx) <= 0:
                continue
            if (wx - lx) * (0 - ly) - (wy - ly) * (x0 - lx) <= 0:
                continue
        if d >= KMAX:
            raise ValueError("vertex count above KMAX")
        path[d] = j
        minx[d + 1] = min(minx[d], wx)
        d += 1
        ptr[d] = start + 1
        # close the loop: left turns at the new end and at the bottom vertex
        if d >= 3 and minx[d] == 0:
            f1x = px[path[1]]
            f1y = py[path[1]]
            if (wx - lx) * (0 - wy) - (wy - ly) * (x0 - wx) > 0 and \
                    (x0 - wx) * (f1y - 0) - (0 - wy) * (f1x - x0) > 0:
                if fill:
                    for t in range(d):
                        xs[t] = px[path[t]]
                        ys[t] = py[path[t]]
                    _normal_form(xs, ys, d, best, tmp, mx, my)
                    nf_out[count, 0] = d
                    poly_out[count, 0] = d
                    for t in range(2 * d):
                        if abs(best[t]) >= 32767:
                            raise ValueError("normal form coordinate out of int16 range")
                        nf_out[count, 1 + t] = best[t]
                    for t in range(d):
                        poly_out[count, 1 + 2 * t] = xs[t]
                        poly_out[count, 2 + 2 * t] = ys[t]
                count += 1
    return count


def classes_in_box(box: int) -> dict[bytes, tuple[tuple[int, ...], tuple[tuple[int, int], ...]]]:
    """Normal form key to ``(normal form, first in-box representative)``."""
    classes: dict = {}
    width = 2 * KMAX + 1
    dummy = np.zeros((1, width), np.int16)
    for x0 in range(box + 1):
        m = _walk(box, x0, False, dummy, dummy)
        if m == 0:
            continue
        nf = np.full((m, width), PAD, np.int16)
        poly = np.full((m, width), PAD, np.int16)
        _walk(box, x0, True, nf, poly)
        _, first = np.unique(nf, axis=0, return_index=True)
        for r in np.sort(first):
            key = nf[r].tobytes()
            if key in classes:
                continue
            k = int(nf[r, 0])
            flat = tuple(int(v) for v in nf[r, 1:1 + 2 * k])
            verts = tuple((int(poly[r, 1 + 2 * t]), int(poly[r, 2 + 2 * t])) for t in range(k))
            classes[key] = (flat, verts)
    return classes
