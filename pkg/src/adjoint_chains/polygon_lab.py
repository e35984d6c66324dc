"""Lattice polygons, their adjoints and levels.

The surface dictionary sends a polygon ``P`` to ``alpha0 = 2 area(P)``,
``beta0 = -b(P)`` (boundary lattice points), ``v = number of vertices`` and
``l = level(P)``. With it the chain inequalities become statements about
polygons that can be checked exhaustively in a small box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import DomainError, Mismatch

Point = tuple[int, int]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Counterclockwise hull without collinear points (Andrew's monotone chain).

    Returns fewer than three points for empty, single-point or collinear input.
    """
    pts = sorted(set((int(x), int(y)) for x, y in points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for q in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], q) <= 0:
            lower.pop()
        lower.append(q)
    upper: list[Point] = []
    for q in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], q) <= 0:
            upper.pop()
        upper.append(q)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


@dataclass(frozen=True)
class LatticePolygon:
    vertices: tuple[Point, ...]

    def __post_init__(self):
        vs = tuple((int(x), int(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 3:
            raise DomainError(f"a polygon needs at least 3 vertices, got {len(vs)}")
        k = len(vs)
        for i in range(k):
            if _cross(vs[i], vs[(i + 1) % k], vs[(i + 2) % k]) <= 0:
                raise DomainError(f"vertices are not strictly convex and counterclockwise at {vs[(i + 1) % k]}")
        # a strictly convex turn sequence can still wind twice around; reject that
        if sum(_cross(vs[0], vs[i], vs[i + 1]) for i in range(1, k - 1)) <= 0 or _winds_more_than_once(vs):
            raise DomainError("vertex list is not a simple convex polygon")

    @classmethod
    def from_points(cls, points: Iterable[Point]) -> "LatticePolygon":
        hull = convex_hull(points)
        if len(hull) < 3:
            raise DomainError("points are collinear or too few for a polygon")
        return cls(tuple(hull))

    def __len__(self):
        return len(self.vertices)

    def to_list(self) -> list[list[int]]:
        return [list(v) for v in self.vertices]


def _winds_more_than_once(vs: Sequence[Point]) -> bool:
    # with all left turns, the edge directions sweep a total angle of 2*pi*w;
    # w = 1 exactly when the list is its own hull in the same cyclic order
    # (a pentagram has all five points on the hull, just visited out of order)
    k = vs.index(min(vs))
    return convex_hull(vs) != list(vs[k:]) + list(vs[:k])


def area2(P: LatticePolygon) -> int:
    vs = P.vertices
    return sum(vs[i][0] * vs[(i + 1) % len(vs)][1] - vs[(i + 1) % len(vs)][0] * vs[i][1]
               for i in range(len(vs)))


def boundary_points(P: LatticePolygon) -> int:
    vs = P.vertices
    return sum(math.gcd(vs[(i + 1) % len(vs)][0] - vs[i][0], vs[(i + 1) % len(vs)][1] - vs[i][1])
               for i in range(len(vs)))


def vertex_count(P: LatticePolygon) -> int:
    return len(P.vertices)


def interior_points(P: LatticePolygon) -> list[Point]:
    """Strictly interior lattice points, in lexicographic order.

    Each row ``y`` is cut down to an integer interval by the edge half-planes.
    """
    vs = P.vertices
    k = len(vs)
    ys = [y for _, y in vs]
    rows = []
    for y in range(min(ys) + 1, max(ys)):
        lo, hi = None, None
        for i in range(k):
            (ax, ay), (bx, by) = vs[i], vs[(i + 1) % k]
            dx, dy = bx - ax, by - ay
            # strictly left of a -> b:  dy * (x - ax) < dx * (y - ay)
            rhs = dx * (y - ay)
            if dy > 0:
                cap = ax + (rhs - 1) // dy
                hi = cap if hi is None else min(hi, cap)
            elif dy < 0:
                cap = ax + (-rhs) // (-dy) + 1
                lo = cap if lo is None else max(lo, cap)
            elif rhs <= 0:
                lo, hi = 1, 0
                break
        rows.append((y, lo, hi))
    return sorted((x, y) for y, lo, hi in rows for x in range(lo, hi + 1))


def pick_interior_count(P: LatticePolygon) -> int:
    return (area2(P) - boundary_points(P) + 2) // 2


@dataclass(frozen=True)
class AdjointResult:
    """Convex hull of the interior lattice points.

    ``kind`` is ``"empty"``, ``"point"``, ``"segment"`` or ``"polygon"``;
    ``points`` holds nothing, the point, the two endpoints or the vertices.
    """

    kind: str
    points: tuple[Point, ...] = ()

    @property
    def polygon(self) -> Optional[LatticePolygon]:
        return LatticePolygon(self.points) if self.kind == "polygon" else None

    @property
    def is_minimal_marker(self) -> bool:
        return self.kind != "polygon"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "points": [list(q) for q in self.points]}


def adjoint(P: LatticePolygon) -> AdjointResult:
    inner = interior_points(P)
    if len(inner) != pick_interior_count(P):
        raise Mismatch("interior point count disagrees with Pick's theorem",
                       expected=pick_interior_count(P), found=len(inner))
    hull = convex_hull(inner)
    if not hull:
        return AdjointResult("empty")
    if len(hull) == 1:
        return AdjointResult("point", (hull[0],))
    if len(hull) == 2:
        return AdjointResult("segment", (hull[0], hull[1]))
    return AdjointResult("polygon", tuple(hull))


def adjoint_tower(P: LatticePolygon) -> list[LatticePolygon]:
    """``P`` followed by its successive polygon adjoints; ends at a minimal polygon."""
    tower = [P]
    while True:
        nxt = adjoint(tower[-1]).polygon
        if nxt is None:
            return tower
        tower.append(nxt)


def level(P: LatticePolygon) -> int:
    return len(adjoint_tower(P)) - 1


@dataclass(frozen=True)
class PolygonInvariants:
    area2: int
    b: int
    v: int
    level: int
    alpha0: int
    beta0: int

    def __post_init__(self):
        if self.alpha0 != self.area2 or self.beta0 != -self.b:
            raise DomainError("dictionary mismatch between polygon and surface invariants")
        if (self.area2 - self.b + 2) % 2 or self.area2 - self.b + 2 < 0:
            raise DomainError("Pick's theorem gives no valid interior count")

    @property
    def interior(self) -> int:
        return (self.area2 - self.b + 2) // 2

    def to_dict(self) -> dict:
        return {"area2": self.area2, "b": self.b, "v": self.v, "level": self.level,
                "alpha0": self.alpha0, "beta0": self.beta0}


def surface_invariants(P: LatticePolygon) -> PolygonInvariants:
    a, b = area2(P), boundary_points(P)
    return PolygonInvariants(area2=a, b=b, v=vertex_count(P), level=level(P), alpha0=a, beta0=-b)


@dataclass(frozen=True)
class InequalityReport:
    area2: int
    b: int
    v: int
    level: int
    corollary_lhs: int
    corollary_rhs: int
    weak_lhs: int

    @property
    def corollary_pass(self) -> bool:
        return self.corollary_lhs >= self.corollary_rhs

    @property
    def weak_pass(self) -> bool:
        return self.weak_lhs >= 0

    @property
    def in_range(self) -> bool:
        """The corollary is only asserted for level >= 1."""
        return self.level >= 1

    def to_dict(self) -> dict:
        return {
            "area2": self.area2, "b": self.b, "v": self.v, "level": self.level,
            "corollary": {"lhs": self.corollary_lhs, "rhs": self.corollary_rhs,
                          "pass": self.corollary_pass},
            "weak": {"lhs": self.weak_lhs, "rhs": 0, "pass": self.weak_pass},
            "in_range": self.in_range,
        }


def check_inequalities(P: LatticePolygon) -> InequalityReport:
    """``area2 - 2 l b + 9 l^2 >= (2l - 1)(v - 11)`` and its weak form ``... >= 0``."""
    return _inequalities(surface_invariants(P))


def _inequalities(inv: PolygonInvariants) -> InequalityReport:
    l = inv.level
    lhs = inv.alpha0 + 2 * l * inv.beta0 + 9 * l * l
    return InequalityReport(area2=inv.area2, b=inv.b, v=inv.v, level=l,
                            corollary_lhs=lhs, corollary_rhs=(2 * l - 1) * (inv.v - 11),
                            weak_lhs=lhs)


# -- normal form and enumeration ----------------------------------------------

@lru_cache(maxsize=None)
def _unimodular_frame(ux: int, uy: int) -> tuple[int, int]:
    """``(a, b)`` with ``a*ux + b*uy == 1`` for a primitive direction."""
    g, a, b = _ext_gcd(ux, uy)
    assert g == 1
    return a, b


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _frame_at(vs: Sequence[Point], i: int) -> tuple[int, int, int, int, int, int, int]:
    """Unimodular map sending edge ``i -> i+1`` of a ccw list to ``(g, 0)`` from the origin.

    The matrix is ``[[a, b], [-uy, ux]]`` (determinant 1) followed by the
    shear ``(x, y) -> (x + s y, y)`` that puts the third vertex at
    ``0 <= x < y``. Returns ``(x0, y0, a, b, ux, uy, s)``.
    """
    k = len(vs)
    x0, y0 = vs[i]
    dx, dy = vs[(i + 1) % k][0] - x0, vs[(i + 1) % k][1] - y0
    g = math.gcd(dx, dy)
    ux, uy = dx // g, dy // g
    a, b = _unimodular_frame(ux, uy)
    x, y = vs[(i + 2) % k][0] - x0, vs[(i + 2) % k][1] - y0
    wx, wy = a * x + b * y, -uy * x + ux * y
    return x0, y0, a, b, ux, uy, -(wx // wy)


def _apply_frame(vs: Sequence[Point], i: int, frame) -> tuple[Point, ...]:
    x0, y0, a, b, ux, uy, s = frame
    k = len(vs)
    out = []
    for j in range(k):
        x, y = vs[(i + j) % k][0] - x0, vs[(i + j) % k][1] - y0
        ny = -uy * x + ux * y
        out.append((a * x + b * y + s * ny, ny))
    return tuple(out)


def _normal_form_ccw(vs: Sequence[Point]) -> tuple[Point, ...]:
    k = len(vs)
    mirrored = tuple((-x, y) for x, y in reversed(vs))  # reflection, re-oriented ccw
    lengths = [math.gcd(vs[(i + 1) % k][0] - vs[i][0], vs[(i + 1) % k][1] - vs[i][1]) for i in range(k)]
    shortest = min(lengths)
    # the minimum starts (0,0), (g,0), (x2,y2): only the shortest edges can lead,
    # and only the frames with the least third vertex need the full image
    frames = []
    for cand in (vs, mirrored):
        for i in range(k):
            dx, dy = cand[(i + 1) % k][0] - cand[i][0], cand[(i + 1) % k][1] - cand[i][1]
            if math.gcd(dx, dy) != shortest:
                continue
            fr = _frame_at(cand, i)
            x0, y0, a, b, ux, uy, sh = fr
            x, y = cand[(i + 2) % k][0] - x0, cand[(i + 2) % k][1] - y0
            ny = -uy * x + ux * y
            frames.append(((a * x + b * y + sh * ny, ny), cand, i, fr))
    lead = min(f[0] for f in frames)
    return min(_apply_frame(cand, i, fr) for key, cand, i, fr in frames if key == lead)


def normal_form(P: LatticePolygon) -> tuple[Point, ...]:
    """Lexicographically least representative under unimodular maps and translations.

    For each vertex and orientation the polygon is mapped so that the edge
    leaving that vertex becomes ``(0,0) -> (g,0)`` with the polygon above it;
    the remaining shear freedom is fixed by the third vertex. The least of
    these images is canonical.
    """
    return _normal_form_ccw(P.vertices)


def _visit_convex_polygons(box: int, visit: Callable[[tuple[Point, ...]], None]) -> None:
    """Call ``visit`` on every strictly convex lattice polygon in ``[0, box]^2``
    touching both axes.

    Vertices are listed counterclockwise from the lowest (then leftmost) one,
    so each polygon is visited once.
    """
    for x0 in range(box + 1):
        cands = [(x, y) for y in range(box + 1) for x in range(box + 1) if y > 0 or x > x0]
        path = [(x0, 0)]

        def extend(px, py, lx, ly, touches):
            # close the loop if both turns at the seam are left turns
            if len(path) >= 3 and touches:
                if (lx - px) * (-ly) - (ly - py) * (x0 - lx) > 0:
                    fx, fy = path[1]
                    if (x0 - lx) * fy - (-ly) * (fx - x0) > 0:
                        visit(tuple(path))
            for wx, wy in cands:
                if len(path) >= 2:
                    # left turn at the current end; v0 strictly left of the new
                    # edge keeps the polar angle around v0 increasing
                    if (lx - px) * (wy - ly) - (ly - py) * (wx - lx) <= 0:
                        continue
                    if (wx - lx) * (-ly) - (wy - ly) * (x0 - lx) <= 0:
                        continue
                path.append((wx, wy))
                extend(lx, ly, wx, wy, touches or wx == 0)
                path.pop()

        extend(x0, 0, x0, 0, x0 == 0)


def reference_convex_polygons(box: int) -> list[tuple[Point, ...]]:
    """Pure Python list of what the compiled walk visits; for cross-checks."""
    out: list[tuple[Point, ...]] = []
    _visit_convex_polygons(box, out.append)
    return out


def reference_classes(box: int) -> set[tuple[Point, ...]]:
    """Normal forms of all polygons in the box, pure Python."""
    return {_normal_form_ccw(vs) for vs in reference_convex_polygons(box)}


def enumerate_polygons(box: int, min_level: int = 0) -> Iterator[LatticePolygon]:
    """One representative per unimodular class with vertices in ``[0, box]^2``.

    Each class is represented by the first polygon in the box the walk finds,
    and classes come out sorted by normal form.
    """
    for P in _representatives(box):
        if min_level <= 0 or level(P) >= min_level:
            yield P


def _representatives(box: int) -> Iterator[LatticePolygon]:
    from ._polygon_kernels import classes_in_box

    if box < 1:
        raise DomainError("box must be >= 1")
    if box > 8:
        raise DomainError("box > 8 is outside desk scale")
    for _, verts in sorted(classes_in_box(box).values()):
        yield LatticePolygon(verts)


@dataclass(frozen=True)
class ScanRow:
    vertices: tuple[Point, ...]
    area2: int
    b: int
    v: int
    level: int
    lhs: int
    rhs: int
    passed: bool
    pick_ok: bool
    in_range: bool

    CSV_FIELDS = ("area2", "b", "v", "level", "lhs", "rhs", "pass", "pick_ok", "in_range", "vertices")

    def csv_row(self) -> list:
        verts = " ".join(f"{x},{y}" for x, y in self.vertices)
        return [self.area2, self.b, self.v, self.level, self.lhs, self.rhs,
                int(self.passed), int(self.pick_ok), int(self.in_range), verts]


def scan_polygons(box: int, min_level: int = 1) -> list[ScanRow]:
    """Corollary and Pick check for every class in the box with ``level >= min_level``."""
    rows = []
    for P in _representatives(box):
        l = level(P)
        if l < min_level:
            continue
        a, b = area2(P), boundary_points(P)
        rep = _inequalities(PolygonInvariants(area2=a, b=b, v=len(P), level=l, alpha0=a, beta0=-b))
        pick_ok = len(interior_points(P)) == pick_interior_count(P)
        rows.append(ScanRow(P.vertices, rep.area2, rep.b, rep.v, rep.level,
                            rep.corollary_lhs, rep.corollary_rhs, rep.corollary_pass,
                            pick_ok, rep.in_range))
    return rows


def parse_vertices(tokens: Sequence[str]) -> LatticePolygon:
    """``["0,0", "4,0", "0,4"]`` to a polygon; the order may be cw or ccw."""
    pts = []
    for tok in tokens:
        parts = tok.split(",")
        if len(parts) != 2:
            raise DomainError(f"vertex {tok!r} is not of the form x,y")
        try:
            pts.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise DomainError(f"vertex {tok!r} is not integral") from exc
    hull = convex_hull(pts)
    if len(hull) != len(set(pts)):
        raise DomainError("vertices are not in strictly convex position")
    return LatticePolygon.from_points(pts)
