"""Robust 2-D primitives: points, lines, homogeneous intersections, convex
clipping, cross ratio, projective and affine maps.

Conventions:
  * points are `Point(x, y)` named tuples,
  * lines are `Line(u, v, l)` for u*x + v*y + l = 0, stored normalized with
    u^2 + v^2 = 1 and the first nonzero of (u, v) positive,
  * vanishing points are homogeneous; w = 0 encodes a direction at infinity,
  * polygons are counter-clockwise.

Everything here is immutable and side-effect free.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    CoincidentLines,
    CoincidentPoints,
    DegenerateQuad,
    DegenerateTriangle,
    ImageAtInfinity,
    InvalidPolygon,
    NotCollinear,
)
from .tolerances import EPS_GEOM, EPS_SINGULAR


class Point(NamedTuple):
    x: float
    y: float


class HomogeneousPoint(NamedTuple):
    x: float
    y: float
    w: float


class Line(NamedTuple):
    u: float
    v: float
    l: float


class Segment(NamedTuple):
    a: Point
    b: Point


PointLike = Sequence[float]


def as_point(p: PointLike) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidPolygon(f"non-finite coordinate {p!r}")
    return Point(x, y)


def distance(p: PointLike, q: PointLike) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def orient(p: PointLike, q: PointLike, r: PointLike) -> int:
    """Sign of the doubled signed area of triangle pqr (+1 CCW, -1 CW).

    |area| <= EPS_GEOM collapses to 0.
    """
    det = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    if abs(det) <= EPS_GEOM:
        return 0
    return 1 if det > 0.0 else -1


def make_line(u: float, v: float, l: float) -> Line:
    """Normalize to u^2+v^2 = 1 with canonical sign (first nonzero of (u,v) > 0)."""
    n = math.hypot(u, v)
    if n <= EPS_SINGULAR:
        raise InvalidPolygon("line with zero normal")
    u, v, l = u / n, v / n, l / n
    if u < -EPS_SINGULAR or (abs(u) <= EPS_SINGULAR and v < 0.0):
        u, v, l = -u, -v, -l
    if abs(u) <= EPS_SINGULAR:
        u = 0.0
    return Line(u + 0.0, v + 0.0, l + 0.0)


def line_through(p: PointLike, q: PointLike) -> Line:
    """Supporting line of two distinct points."""
    if distance(p, q) <= EPS_SINGULAR:
        raise CoincidentPoints("line through coincident points")
    return make_line(p[1] - q[1], q[0] - p[0], p[0] * q[1] - q[0] * p[1])


def line_point_direction(p: PointLike, d: PointLike) -> Line:
    """Line through p with direction d."""
    return make_line(-d[1], d[0], d[1] * p[0] - d[0] * p[1])


def line_eval(line: Line, p: PointLike) -> float:
    return line.u * p[0] + line.v * p[1] + line.l


def point_line_distance(line: Line, p: PointLike) -> float:
    """Euclidean point-line distance |u*x+v*y+l| / sqrt(u^2+v^2)."""
    return abs(line_eval(line, p)) / math.hypot(line.u, line.v)


def line_intersection(l1: Line, l2: Line) -> HomogeneousPoint:
    """Homogeneous cross product of the two coefficient triples.

    w = 0 iff the lines are parallel (point at infinity in direction (x, y)).
    Identical lines (under canonical normalization) are rejected.
    """
    x = l1.v * l2.l - l1.l * l2.v
    y = l1.l * l2.u - l1.u * l2.l
    w = l1.u * l2.v - l1.v * l2.u
    n = max(abs(x), abs(y), abs(w))
    if n <= EPS_SINGULAR:
        raise CoincidentLines(f"lines coincide: {l1} / {l2}")
    return HomogeneousPoint(x, y, w)


def homogeneous_to_point(h: HomogeneousPoint) -> Point:
    if abs(h.w) <= EPS_SINGULAR * max(abs(h.x), abs(h.y), 1.0):
        raise ImageAtInfinity(f"point at infinity {h!r}")
    return Point(h.x / h.w, h.y / h.w)


def cross_ratio(a: PointLike, b: PointLike, c: PointLike, d: PointLike) -> float:
    """(|a-c| |b-d|) / (|b-c| |a-d|) with signed distances along the line.

    The four points must be distinct and collinear (perpendicular residual
    <= EPS_GEOM * max(1, spread)).  The value does not depend on the chosen
    line orientation: each factor is a product of two signed lengths.
    """
    pts = [as_point(a), as_point(b), as_point(c), as_point(d)]
    for i in range(4):
        for j in range(i + 1, 4):
            if distance(pts[i], pts[j]) <= EPS_GEOM:
                raise CoincidentPoints(f"points {i} and {j} coincide")
    # Orient along the most separated pair for stability.
    best = max(
        ((i, j) for i in range(4) for j in range(i + 1, 4)),
        key=lambda ij: distance(pts[ij[0]], pts[ij[1]]),
    )
    p0 = pts[best[0]]
    spread = distance(p0, pts[best[1]])
    ex = (pts[best[1]].x - p0.x) / spread
    ey = (pts[best[1]].y - p0.y) / spread
    ts = []
    for p in pts:
        dx, dy = p.x - p0.x, p.y - p0.y
        perp = abs(dx * ey - dy * ex)
        if perp > EPS_GEOM * max(1.0, spread):
            raise NotCollinear(f"residual {perp:.3e} exceeds tolerance")
        ts.append(dx * ex + dy * ey)
    ta, tb, tc, td = ts
    return ((tc - ta) * (td - tb)) / ((tc - tb) * (td - ta))


def polygon_area(vertices: Sequence[PointLike]) -> float:
    """Signed shoelace area (positive for CCW)."""
    s = 0.0
    n = len(vertices)
    for i in range(n):
        x0, y0 = vertices[i][0], vertices[i][1]
        x1, y1 = vertices[(i + 1) % n][0], vertices[(i + 1) % n][1]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def polygon_centroid(vertices: Sequence[PointLike]) -> Point:
    a = 0.0
    cx = 0.0
    cy = 0.0
    n = len(vertices)
    for i in range(n):
        x0, y0 = vertices[i][0], vertices[i][1]
        x1, y1 = vertices[(i + 1) % n][0], vertices[(i + 1) % n][1]
        w = x0 * y1 - x1 * y0
        a += w
        cx += (x0 + x1) * w
        cy += (y0 + y1) * w
    if abs(a) <= 1e-300:
        xs = [v[0] for v in vertices]
        ys = [v[1] for v in vertices]
        return Point(sum(xs) / n, sum(ys) / n)
    return Point(cx / (3.0 * a), cy / (3.0 * a))


def clip_polygon_halfplane(
    vertices: Sequence[PointLike], line: Line, side: int, eps: float = EPS_GEOM
) -> list[Point]:
    """Clip a convex CCW chain to {p : side * line(p) >= 0}.

    Standard single-plane Sutherland-Hodgman; vertices within `eps` of the
    line are kept on both sides.  Returns [] when the intersection is empty
    or has no area.
    """
    if side not in (-1, 1):
        raise ValueError("side must be -1 or +1")
    n = len(vertices)
    if n == 0:
        return []
    vals = [side * line_eval(line, v) for v in vertices]
    out: list[Point] = []
    for i in range(n):
        j = (i + 1) % n
        vi, vj = vals[i], vals[j]
        pi, pj = vertices[i], vertices[j]
        if vi >= -eps:
            out.append(Point(pi[0], pi[1]))
        if (vi > eps and vj < -eps) or (vi < -eps and vj > eps):
            t = vi / (vi - vj)
            out.append(Point(pi[0] + t * (pj[0] - pi[0]), pi[1] + t * (pj[1] - pi[1])))
    # Drop consecutive duplicates.
    dedup: list[Point] = []
    for p in out:
        if not dedup or distance(dedup[-1], p) > eps:
            dedup.append(p)
    if len(dedup) > 1 and distance(dedup[0], dedup[-1]) <= eps:
        dedup.pop()
    if len(dedup) < 3 or polygon_area(dedup) <= eps * eps:
        return []
    return dedup


def convex_hull(points: Sequence[PointLike]) -> list[Point]:
    """Andrew monotone chain; returns CCW hull without the closing vertex."""
    pts = sorted(set((float(p[0]), float(p[1])) for p in points))
    if len(pts) <= 2:
        return [Point(*p) for p in pts]

    def half(seq):
        h: list[tuple[float, float]] = []
        for p in seq:
            while len(h) >= 2 and (
                (h[-1][0] - h[-2][0]) * (p[1] - h[-2][1])
                - (h[-1][1] - h[-2][1]) * (p[0] - h[-2][0])
            ) <= 0.0:
                h.pop()
            h.append(p)
        return h

    lower = half(pts)
    upper = half(reversed(pts))
    return [Point(*p) for p in lower[:-1] + upper[:-1]]


class ConvexPolygon:
    """Ordered CCW vertex cycle with derived edge lines.

    Edge i spans vertex i -> vertex i+1 (mod m).  With strict=True (the
    domain polygon) every turn must be strictly convex; strict=False admits
    derived regions with collinear consecutive vertices, which are merged.
    """

    __slots__ = (
        "vertices",
        "m",
        "lines",
        "segments",
        "area",
        "centroid",
        "diameter",
        "_arr_u",
        "_arr_v",
        "_arr_l",
    )

    def __init__(self, vertices: Sequence[PointLike], strict: bool = True):
        pts = [as_point(v) for v in vertices]
        if not strict:
            pts = _merge_chain(pts)
        if len(pts) < 3:
            raise InvalidPolygon(f"need at least 3 vertices, got {len(pts)}")
        m = len(pts)
        for i in range(m):
            for j in range(i + 1, m):
                if distance(pts[i], pts[j]) <= EPS_GEOM:
                    raise InvalidPolygon(f"repeated vertex at index {i}/{j}")
        for i in range(m):
            o = orient(pts[i], pts[(i + 1) % m], pts[(i + 2) % m])
            if strict and o != 1:
                raise InvalidPolygon(
                    f"vertex {(i + 1) % m}: polygon must be strictly convex CCW"
                )
            if not strict and o == -1:
                raise InvalidPolygon(f"vertex {(i + 1) % m}: reflex turn")
        self.vertices: tuple[Point, ...] = tuple(pts)
        self.m = m
        self.segments: tuple[Segment, ...] = tuple(
            Segment(pts[i], pts[(i + 1) % m]) for i in range(m)
        )
        self.lines: tuple[Line, ...] = tuple(
            line_through(s.a, s.b) for s in self.segments
        )
        self.area = polygon_area(pts)
        self.centroid = polygon_centroid(pts)
        self.diameter = max(
            distance(pts[i], pts[j]) for i in range(m) for j in range(i + 1, m)
        )
        # Interior-positive edge line coefficients for fast ray queries.
        u = np.empty(m)
        v = np.empty(m)
        l = np.empty(m)
        cx, cy = self.centroid
        for i, ln in enumerate(self.lines):
            s = 1.0 if line_eval(ln, (cx, cy)) > 0.0 else -1.0
            u[i], v[i], l[i] = s * ln.u, s * ln.v, s * ln.l
        self._arr_u, self._arr_v, self._arr_l = u, v, l

    def inner_distances(self, p: PointLike) -> np.ndarray:
        """Signed distance to each edge line, positive inside."""
        return self._arr_u * p[0] + self._arr_v * p[1] + self._arr_l

    def boundary_distance(self, p: PointLike) -> float:
        """Min signed edge-line distance; positive strictly inside."""
        return float(self.inner_distances(p).min())

    def contains(self, p: PointLike, margin: float = 0.0) -> bool:
        return self.boundary_distance(p) >= margin

    def inward_line(self, i: int) -> tuple[float, float, float]:
        """Edge i coefficients oriented so the interior is positive."""
        return (float(self._arr_u[i]), float(self._arr_v[i]), float(self._arr_l[i]))

    def __repr__(self) -> str:
        return f"ConvexPolygon({[tuple(v) for v in self.vertices]!r})"


def _merge_chain(pts: list[Point]) -> list[Point]:
    """Drop duplicate and collinear consecutive vertices of a convex chain."""
    out: list[Point] = []
    for p in pts:
        if not out or distance(out[-1], p) > EPS_GEOM:
            out.append(p)
    if len(out) > 1 and distance(out[0], out[-1]) <= EPS_GEOM:
        out.pop()
    changed = True
    while changed and len(out) > 3:
        changed = False
        for i in range(len(out)):
            a = out[(i - 1) % len(out)]
            b = out[i]
            c = out[(i + 1) % len(out)]
            if orient(a, b, c) == 0:
                out.pop(i)
                changed = True
                break
    return out


class ProjectiveMap:
    """3x3 homogeneous transform acting on column vectors (x, y, 1)^T."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: np.ndarray):
        m = np.asarray(matrix, dtype=float)
        if m.shape != (3, 3):
            raise ValueError("projective map needs a 3x3 matrix")
        if abs(np.linalg.det(m)) <= EPS_SINGULAR:
            raise DegenerateQuad("singular projective matrix")
        self.matrix = m

    @staticmethod
    def identity() -> "ProjectiveMap":
        return ProjectiveMap(np.eye(3))

    def apply(self, p: PointLike) -> Point:
        x, y, w = self.matrix @ (p[0], p[1], 1.0)
        if abs(w) <= EPS_SINGULAR:
            raise ImageAtInfinity(f"image of {p!r} is at infinity")
        return Point(x / w, y / w)

    def apply_homogeneous(self, h: HomogeneousPoint) -> HomogeneousPoint:
        x, y, w = self.matrix @ (h.x, h.y, h.w)
        return HomogeneousPoint(x, y, w)

    def apply_line(self, line: Line) -> Line:
        """Lines transform by the inverse transpose."""
        u, v, l = np.linalg.solve(self.matrix.T, (line.u, line.v, line.l))
        return make_line(u, v, l)

    def inverse(self) -> "ProjectiveMap":
        return ProjectiveMap(np.linalg.inv(self.matrix))

    def compose(self, other: "ProjectiveMap") -> "ProjectiveMap":
        """self after other: (self.compose(other))(p) = self(other(p))."""
        return ProjectiveMap(self.matrix @ other.matrix)

    def __repr__(self) -> str:
        return f"ProjectiveMap({self.matrix.tolist()!r})"


_UNIT_SQUARE_TARGETS = (Point(0.0, 0.0), Point(0.0, 1.0), Point(1.0, 1.0), Point(1.0, 0.0))


def map_quad_to_unit_square(
    p1: PointLike, p2: PointLike, p3: PointLike, p4: PointLike
) -> ProjectiveMap:
    """Projective map sending p1..p4 to (0,0), (0,1), (1,1), (1,0).

    Solves the 8x8 system M V = Q for the eight unknown matrix entries with
    t33 fixed to 1 (LAPACK partial-pivoting solve).
    """
    sources = [as_point(p) for p in (p1, p2, p3, p4)]
    for i in range(4):
        o = orient(sources[i], sources[(i + 1) % 4], sources[(i + 2) % 4])
        if o == 0:
            raise DegenerateQuad("three source corners are collinear")
    rows = []
    rhs = []
    for (px, py), (qx, qy) in zip(sources, _UNIT_SQUARE_TARGETS):
        rows.append([px, py, 1.0, 0.0, 0.0, 0.0, -px * qx, -py * qx])
        rhs.append(qx)
        rows.append([0.0, 0.0, 0.0, px, py, 1.0, -px * qy, -py * qy])
        rhs.append(qy)
    m = np.array(rows)
    try:
        sol = np.linalg.solve(m, np.array(rhs))
    except np.linalg.LinAlgError as exc:
        raise DegenerateQuad(f"8x8 corner system singular: {exc}") from exc
    t = np.array(
        [
            [sol[0], sol[1], sol[2]],
            [sol[3], sol[4], sol[5]],
            [sol[6], sol[7], 1.0],
        ]
    )
    result = ProjectiveMap(t)
    for src, dst in zip(sources, _UNIT_SQUARE_TARGETS):
        if distance(result.apply(src), dst) > 1e-9:
            raise DegenerateQuad("corner images exceed tolerance 1e-9")
    return result


def map_triangle_to_unit_simplex(p: PointLike, q: PointLike, r: PointLike) -> ProjectiveMap:
    """Affine map sending p -> (1,0), q -> (0,1), r -> (0,0)."""
    p, q, r = as_point(p), as_point(q), as_point(r)
    if orient(p, q, r) == 0:
        raise DegenerateTriangle("triangle corners are collinear")
    # Column-convention affine matrix sending the unit simplex onto pqr.
    fwd = np.array(
        [
            [p.x - r.x, q.x - r.x, r.x],
            [p.y - r.y, q.y - r.y, r.y],
            [0.0, 0.0, 1.0],
        ]
    )
    result = ProjectiveMap(np.linalg.inv(fwd))
    for src, dst in ((p, Point(1.0, 0.0)), (q, Point(0.0, 1.0)), (r, Point(0.0, 0.0))):
        if distance(result.apply(src), dst) > 1e-9:
            raise DegenerateTriangle("vertex images exceed tolerance 1e-9")
    return result
