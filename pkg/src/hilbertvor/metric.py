"""Funk and Hilbert distances on a convex polygon, chords, spokes, sector
decompositions, metric balls, and points-at-distance.

The Hilbert distance between interior points s, t with chord endpoints
ordered <x, s, t, y> is H(s,t) = 0.5 * ln[(|s-y| |t-x|) / (|t-y| |s-x|)],
equivalently the average of the forward and backward Funk distances.  All
ray work is done in the parameter of the ray p(t) = origin + t*direction,
where the cross ratio reduces to a ratio of boundary parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InputError, PointNotInterior, PointsCoincide
from .geometry import (
    ConvexPolygon,
    Point,
    PointLike,
    as_point,
    distance,
    line_through,
    polygon_area,
    polygon_centroid,
)
from .tolerances import EPS_GEOM, INTERIOR_MARGIN_FACTOR


class Chord(NamedTuple):
    """Chord through two interior points, endpoints ordered <x, s, t, y>."""

    x_end: Point
    y_end: Point
    x_edge: int
    y_edge: int


class Spoke(NamedTuple):
    """Chord through a polygon vertex and a site.

    forward_end is where the ray vertex->site leaves the polygon;
    backward_end is the vertex itself.
    """

    site: Point
    vertex: int
    forward_end: Point
    backward_end: Point


@dataclass(frozen=True)
class Sector:
    """Cell of the two-site spoke arrangement.

    For any p inside `region`, the chord through site s and p leaves the
    polygon backward through edge_a and forward through edge_b; the chord
    through t and p backward through edge_c and forward through edge_d.
    `lines` carries those four edge lines with the interior positive.
    """

    region: tuple[Point, ...]
    edge_a: int
    edge_b: int
    edge_c: int
    edge_d: int
    sites: tuple[Point, Point]
    lines: tuple[tuple[float, float, float], ...]

    @property
    def edges(self) -> tuple[int, int, int, int]:
        return (self.edge_a, self.edge_b, self.edge_c, self.edge_d)

    @property
    def centroid(self) -> Point:
        return polygon_centroid(self.region)

    @property
    def area(self) -> float:
        return polygon_area(self.region)


@dataclass(frozen=True)
class HilbertBall:
    center: Point
    radius: float
    boundary: ConvexPolygon


def interior_margin(omega: ConvexPolygon) -> float:
    return INTERIOR_MARGIN_FACTOR * omega.diameter


def ensure_interior(omega: ConvexPolygon, p: PointLike, what: str = "point") -> Point:
    p = as_point(p)
    if omega.boundary_distance(p) <= interior_margin(omega):
        raise PointNotInterior(f"{what} {tuple(p)} is not strictly interior")
    return p


def _ray_params(
    omega: ConvexPolygon, origin: PointLike, direction: PointLike
) -> tuple[float, int, float, int]:
    """Boundary parameters of the line origin + t*direction.

    Returns (t_backward, edge_backward, t_forward, edge_forward) with
    t_backward < 0 < t_forward.  Ties (the line leaving through a vertex)
    resolve to the lower edge index.
    """
    vals = omega.inner_distances(origin)
    g = omega._arr_u * direction[0] + omega._arr_v * direction[1]
    tiny = 1e-300
    t_fwd = math.inf
    e_fwd = -1
    t_bwd = -math.inf
    e_bwd = -1
    for i in range(omega.m):
        gi = float(g[i])
        if gi < -tiny:
            t = float(-vals[i]) / gi
            if t < t_fwd * (1.0 - 1e-12) - 1e-15:
                t_fwd, e_fwd = t, i
        elif gi > tiny:
            t = float(-vals[i]) / gi
            if t > t_bwd * (1.0 - 1e-12) + 1e-15:
                t_bwd, e_bwd = t, i
    if e_fwd < 0 or e_bwd < 0:
        raise PointNotInterior(f"ray from {tuple(origin)} does not cross the boundary twice")
    return t_bwd, e_bwd, t_fwd, e_fwd


def chord(omega: ConvexPolygon, s: PointLike, t: PointLike) -> Chord:
    """Intersection of the line through s and t with the polygon."""
    s = ensure_interior(omega, s, "s")
    t = ensure_interior(omega, t, "t")
    if distance(s, t) <= EPS_GEOM * max(1.0, omega.diameter):
        raise PointsCoincide("chord endpoints coincide")
    d = (t.x - s.x, t.y - s.y)
    tb, eb, tf, ef = _ray_params(omega, s, d)
    x_end = Point(s.x + tb * d[0], s.y + tb * d[1])
    y_end = Point(s.x + tf * d[0], s.y + tf * d[1])
    return Chord(x_end, y_end, eb, ef)


def funk_distance(omega: ConvexPolygon, s: PointLike, t: PointLike) -> float:
    """F(s,t) = ln(|s-y| / |t-y|), y the exit of ray s->t; 0 when s = t."""
    s = ensure_interior(omega, s, "s")
    t = ensure_interior(omega, t, "t")
    if distance(s, t) <= EPS_GEOM * max(1.0, omega.diameter):
        return 0.0
    d = (t.x - s.x, t.y - s.y)
    _, _, tf, _ = _ray_params(omega, s, d)
    return math.log(tf / (tf - 1.0))


def hilbert_distance(omega: ConvexPolygon, s: PointLike, t: PointLike) -> float:
    """Half the log cross ratio (s,t;y,x) along the chord; 0 iff s = t."""
    s = ensure_interior(omega, s, "s")
    t = ensure_interior(omega, t, "t")
    if distance(s, t) <= EPS_GEOM * max(1.0, omega.diameter):
        return 0.0
    d = (t.x - s.x, t.y - s.y)
    tb, _, tf, _ = _ray_params(omega, s, d)
    # t is at parameter 1; cross ratio in chord parameters.
    return 0.5 * math.log((tf * (1.0 - tb)) / ((tf - 1.0) * (-tb)))


def hilbert_distance_batch(
    omega: ConvexPolygon, s: PointLike, qs: np.ndarray
) -> np.ndarray:
    """Vectorized H(s, q) over rows of qs; all points assumed interior."""
    qs = np.asarray(qs, dtype=float)
    d = qs - np.array([s[0], s[1]])
    g = d @ np.vstack([omega._arr_u, omega._arr_v])  # (K, m)
    vals = omega.inner_distances(s)  # (m,)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = -vals / g
        tf = np.where(g < 0.0, t, np.inf).min(axis=1)
        tb = np.where(g > 0.0, t, -np.inf).max(axis=1)
        cr = (tf * (1.0 - tb)) / ((tf - 1.0) * (-tb))
        out = 0.5 * np.log(cr)
    coincident = np.hypot(d[:, 0], d[:, 1]) <= EPS_GEOM * max(1.0, omega.diameter)
    out[coincident] = 0.0
    return out


def geodesic_additivity_holds(
    omega: ConvexPolygon, a: PointLike, b: PointLike, c: PointLike
) -> bool:
    """True iff both boundary-point collinearity conditions hold.

    H(a,b) + H(b,c) = H(a,c) exactly when the forward boundary points of the
    rays ab, bc, ac are collinear and likewise the backward ones.
    """
    a = ensure_interior(omega, a, "a")
    b = ensure_interior(omega, b, "b")
    c = ensure_interior(omega, c, "c")
    eps = EPS_GEOM * max(1.0, omega.diameter)
    if distance(a, b) <= eps or distance(b, c) <= eps or distance(a, c) <= eps:
        raise PointsCoincide("points must be pairwise distinct")

    def hit(p: Point, q: Point) -> Point:
        d = (q.x - p.x, q.y - p.y)
        _, _, tf, _ = _ray_params(omega, p, d)
        return Point(p.x + tf * d[0], p.y + tf * d[1])

    def collinear(p: Point, q: Point, r: Point) -> bool:
        pairs = [(p, q), (p, r), (q, r)]
        far = max(pairs, key=lambda pq: distance(*pq))
        if distance(*far) <= eps:
            return True
        u, v = far
        third = [w for w in (p, q, r) if w is not u and w is not v][0]
        n = distance(u, v)
        perp = abs((v.x - u.x) * (third.y - u.y) - (v.y - u.y) * (third.x - u.x)) / n
        return perp <= eps

    fwd = collinear(hit(a, b), hit(b, c), hit(a, c))
    bwd = collinear(hit(b, a), hit(c, b), hit(c, a))
    return fwd and bwd


def spokes(omega: ConvexPolygon, s: PointLike) -> list[Spoke]:
    """One spoke per polygon vertex: the chord through the vertex and s."""
    s = ensure_interior(omega, s, "site")
    out = []
    for i, v in enumerate(omega.vertices):
        d = (s.x - v.x, s.y - v.y)
        _, _, tf, _ = _ray_params(omega, s, d)
        out.append(Spoke(s, i, Point(s.x + tf * d[0], s.y + tf * d[1]), v))
    return out


def _split_cells(
    cells: list[list[Point]], lines, area_floor: float
) -> list[list[Point]]:
    from .geometry import clip_polygon_halfplane, line_eval

    for ln in lines:
        nxt: list[list[Point]] = []
        for cell in cells:
            vals = [line_eval(ln, p) for p in cell]
            if all(v >= -EPS_GEOM for v in vals) or all(v <= EPS_GEOM for v in vals):
                nxt.append(cell)
                continue
            for side in (1, -1):
                piece = clip_polygon_halfplane(cell, ln, side)
                if piece and abs(polygon_area(piece)) > area_floor:
                    nxt.append(piece)
        cells = nxt
    return cells


def sector_decomposition(
    omega: ConvexPolygon, s: PointLike, t: PointLike
) -> list[Sector]:
    """Arrangement of the polygon cut by the spoke chords of both sites.

    Cells are labeled by the chord exit edges evaluated at their centroids;
    they cover the polygon with disjoint interiors.
    """
    s = ensure_interior(omega, s, "s")
    t = ensure_interior(omega, t, "t")
    if distance(s, t) <= EPS_GEOM * max(1.0, omega.diameter):
        raise PointsCoincide("sites coincide")
    lines = []
    for site in (s, t):
        for v in omega.vertices:
            lines.append(line_through(v, site))
    cells = _split_cells([list(omega.vertices)], lines, 1e-12 * abs(omega.area))
    sectors = []
    for cell in cells:
        cen = polygon_centroid(cell)
        _, ea, _, eb = _chord_edges(omega, s, cen)
        _, ec, _, ed = _chord_edges(omega, t, cen)
        edge_lines = tuple(omega.inward_line(i) for i in (ea, eb, ec, ed))
        sectors.append(Sector(tuple(cell), ea, eb, ec, ed, (s, t), edge_lines))
    return sectors


def _chord_edges(
    omega: ConvexPolygon, site: Point, p: Point
) -> tuple[float, int, float, int]:
    d = (p.x - site.x, p.y - site.y)
    tb, eb, tf, ef = _ray_params(omega, site, d)
    return tb, eb, tf, ef


def point_at_distance(
    omega: ConvexPolygon, s: PointLike, direction: PointLike, r: float
) -> Point:
    """The point p on the ray from s along `direction` with H(s,p) = r.

    Fixing the cross ratio to e^{2r} makes the ray parameter of p a rational
    function of the chord parameters, solved in closed form.
    """
    s = ensure_interior(omega, s, "s")
    if not math.isfinite(r) or r < 0.0:
        raise InputError("radius must be finite and non-negative")
    n = math.hypot(direction[0], direction[1])
    if n <= EPS_GEOM:
        raise InputError("direction must be nonzero")
    d = (direction[0] / n, direction[1] / n)
    if r == 0.0:
        return s
    tb, _, tf, _ = _ray_params(omega, s, d)
    c = math.exp(2.0 * r)
    tp = tf * tb * (1.0 - c) / (tf - c * tb)
    return Point(s.x + tp * d[0], s.y + tp * d[1])


def hilbert_ball(omega: ConvexPolygon, s: PointLike, r: float) -> HilbertBall:
    """Metric ball: a convex polygon whose vertices lie on the spokes of s."""
    s = ensure_interior(omega, s, "center")
    if not (r > 0.0) or not math.isfinite(r):
        raise InputError("ball radius must be positive and finite")
    dirs = []
    for v in omega.vertices:
        for d in ((s.x - v.x, s.y - v.y), (v.x - s.x, v.y - s.y)):
            n = math.hypot(*d)
            dirs.append((d[0] / n, d[1] / n))
    pts = [point_at_distance(omega, s, d, r) for d in dirs]
    margin = interior_margin(omega)
    if any(omega.boundary_distance(p) <= margin for p in pts):
        raise InputError(
            f"radius {r:g} is too large: the ball reaches the boundary margin"
        )
    pts.sort(key=lambda p: math.atan2(p.y - s.y, p.x - s.x))
    merged: list[Point] = []
    for p in pts:
        if all(distance(p, q) > EPS_GEOM for q in merged):
            merged.append(p)
    boundary = ConvexPolygon(merged, strict=False)
    return HilbertBall(s, r, boundary)
