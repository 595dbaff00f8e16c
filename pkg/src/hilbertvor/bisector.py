"""Bisector conics per sector, canonical-frame reductions, conic
classification, degenerate factoring, and tracing across the arrangement.

Within a sector whose four boundary edges have line equations a, b, c, d
(edge values positive at interior points), equidistance of a point p from
the two sites s, t reduces to

    (b.p)(c.p) = k (a.p)(d.p),   k = (b.s)(c.t) / ((d.t)(a.s)),

where x.p denotes x1*px + x2*py + x3.  Expanding gives a conic
A px^2 + B px py + C py^2 + D px + E py + F = 0 whose coefficients depend
only on the four edge lines and the sites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    DegeneratePair,
    HilbertError,
    NotDegenerate,
    SiteOnEdgeLine,
    SiteOutsideFrame,
)
from .geometry import (
    ConvexPolygon,
    HomogeneousPoint,
    Line,
    Point,
    PointLike,
    as_point,
    convex_hull,
    distance,
    line_intersection,
    line_through,
    make_line,
    polygon_centroid,
)
from .metric import (
    Sector,
    ensure_interior,
    hilbert_distance,
    interior_margin,
    sector_decomposition,
)
from .tolerances import (
    EPS_GEOM,
    EPS_SINGULAR,
    EPS_STITCH,
    SAMPLING_TOL_FACTOR,
    discriminant_tolerance,
)

Triple = tuple[float, float, float]


@dataclass(frozen=True)
class ConicCoefficients:
    """A px^2 + B px py + C py^2 + D px + E py + F = 0, plus the constant k."""

    A: float
    B: float
    C: float
    D: float
    E: float
    F: float
    k: float

    def evaluate(self, p: PointLike) -> float:
        x, y = p[0], p[1]
        return (
            self.A * x * x
            + self.B * x * y
            + self.C * y * y
            + self.D * x
            + self.E * y
            + self.F
        )

    def gradient(self, p: PointLike) -> tuple[float, float]:
        x, y = p[0], p[1]
        return (2.0 * self.A * x + self.B * y + self.D, self.B * x + 2.0 * self.C * y + self.E)

    def coefficient_scale(self) -> float:
        return max(abs(self.A), abs(self.B), abs(self.C), abs(self.D), abs(self.E), abs(self.F))

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (self.A, self.B, self.C, self.D, self.E, self.F)


class ConicType(Enum):
    ELLIPSE = "ellipse"
    PARABOLA = "parabola"
    HYPERBOLA = "hyperbola"
    DEGENERATE_LINEAR = "degenerate_linear"


class ConicClass(NamedTuple):
    tag: ConicType
    discriminant: float


@dataclass(frozen=True)
class BisectorPiece:
    sector: Sector
    conic: ConicCoefficients
    polyline: tuple[Point, ...]
    on_spoke: bool = False


@dataclass(frozen=True)
class BisectorCurve:
    pieces: tuple[BisectorPiece, ...]
    endpoints: tuple[Point, Point]
    degenerate: bool = False

    def sample_points(self) -> list[Point]:
        out: list[Point] = []
        for piece in self.pieces:
            for p in piece.polyline:
                if not out or distance(out[-1], p) > 1e-15:
                    out.append(p)
        return out


def _dot3(coeffs: Triple, p: PointLike) -> float:
    return coeffs[0] * p[0] + coeffs[1] * p[1] + coeffs[2]


def general_bisector_conic(
    a: Triple, b: Triple, c: Triple, d: Triple, s: PointLike, t: PointLike
) -> ConicCoefficients:
    """General bisector conic from the four edge line equations and the sites."""
    a1, a2, a3 = a
    b1, b2, b3 = b
    c1, c2, c3 = c
    d1, d2, d3 = d
    alpha_s = _dot3(a, s)
    beta_s = _dot3(b, s)
    gamma_t = _dot3(c, t)
    delta_t = _dot3(d, t)
    if abs(alpha_s) <= EPS_SINGULAR or abs(delta_t) <= EPS_SINGULAR:
        raise SiteOnEdgeLine("site lies on an edge line of the sector")
    k = (beta_s * gamma_t) / (delta_t * alpha_s)
    return ConicCoefficients(
        A=b1 * c1 - a1 * d1 * k,
        B=b2 * c1 + b1 * c2 - a1 * d2 * k - a2 * d1 * k,
        C=b2 * c2 - a2 * d2 * k,
        D=b3 * c1 + c3 * b1 - a3 * d1 * k - a1 * d3 * k,
        E=b3 * c2 + b2 * c3 - a2 * d3 * k - a3 * d2 * k,
        F=b3 * c3 - a3 * d3 * k,
        k=k,
    )


def bisector_conic(sector: Sector) -> ConicCoefficients:
    """General bisector conic of a sector, from interior-positive edge lines."""
    s, t = sector.sites
    a, b, c, d = sector.lines
    return general_bisector_conic(a, b, c, d, s, t)


def classify_conic(conic: ConicCoefficients) -> ConicClass:
    """Type from the discriminant B^2 - 4AC; rank <= 2 matrices factor into lines.

    Rank is tested on the eigenvalue ratio of the symmetric 3x3 matrix,
    which is scale-invariant; a determinant threshold would misread
    near-double-line conics (tiny k) whose determinant is small but whose
    least eigenvalue is not.
    """
    disc = conic.B * conic.B - 4.0 * conic.A * conic.C
    eps = discriminant_tolerance(conic.A, conic.B, conic.C)
    m = np.array(
        [
            [conic.A, conic.B / 2.0, conic.D / 2.0],
            [conic.B / 2.0, conic.C, conic.E / 2.0],
            [conic.D / 2.0, conic.E / 2.0, conic.F],
        ]
    )
    evals = np.abs(np.linalg.eigvalsh(m))
    degenerate = evals.min() <= 1e-10 * max(evals.max(), 1e-300)
    if degenerate and disc >= -eps:
        return ConicClass(ConicType.DEGENERATE_LINEAR, disc)
    if abs(disc) <= eps:
        return ConicClass(ConicType.PARABOLA, disc)
    if disc < 0.0:
        return ConicClass(ConicType.ELLIPSE, disc)
    return ConicClass(ConicType.HYPERBOLA, disc)


def degenerate_factor(conic: ConicCoefficients) -> list[Line]:
    """Linear factor(s) of a rank <= 2 conic.

    A line pair with quadratic part comes from the quadratic formula whose
    square root is a perfect square of a linear form; a vanishing quadratic
    part leaves the single line Dx + Ey + F = 0.
    """
    if classify_conic(conic).tag is not ConicType.DEGENERATE_LINEAR:
        raise NotDegenerate("conic does not factor into lines")
    A, B, C, D, E, F = conic.as_tuple()
    qscale = max(abs(A), abs(B), abs(C))
    lscale = max(abs(D), abs(E), abs(F), 1e-300)
    if qscale <= 1e-12 * max(lscale, 1.0):
        return [make_line(D, E, F)]
    # B^2-4AC suffers catastrophic cancellation for (near-)parallel line
    # pairs; below the cancellation floor the slopes are treated as equal
    # and the factors differ only in their constant term.
    rad = B * B - 4.0 * A * C
    parallel = rad <= 1e-13 * qscale * qscale
    if abs(A) >= abs(C) and abs(A) > 1e-14 * qscale:
        if parallel:
            alpha = 0.0
            beta = math.sqrt(max(D * D - 4.0 * A * F, 0.0))
        else:
            alpha = math.sqrt(rad)
            beta = (2.0 * B * D - 4.0 * A * E) / (2.0 * alpha)
        lines = [
            make_line(2.0 * A, B - alpha, D - beta),
            make_line(2.0 * A, B + alpha, D + beta),
        ]
    elif abs(C) > 1e-14 * qscale:
        if parallel:
            alpha = 0.0
            beta = math.sqrt(max(E * E - 4.0 * C * F, 0.0))
        else:
            alpha = math.sqrt(rad)
            beta = (2.0 * B * E - 4.0 * C * D) / (2.0 * alpha)
        lines = [
            make_line(B - alpha, 2.0 * C, E - beta),
            make_line(B + alpha, 2.0 * C, E + beta),
        ]
    else:
        # A ~ C ~ 0, B dominant: B xy + Dx + Ey + F factors as (Bx+E)(By+D)/B.
        lines = [make_line(B, 0.0, E), make_line(0.0, B, D)]
    # Drop a duplicated factor (double line).
    if len(lines) == 2 and _lines_close(lines[0], lines[1]):
        lines = lines[:1]
    return lines


def _lines_close(l1: Line, l2: Line, tol: float = 1e-9) -> bool:
    return (
        abs(l1.u - l2.u) <= tol and abs(l1.v - l2.v) <= tol and abs(l1.l - l2.l) <= tol
    )


# Canonical frames.  Raw (unnormalized) edge line triples are used so that k
# and the coefficients come out in the reference form.
_SIMPLEX_A: Triple = (0.0, 1.0, 0.0)  # y = 0
_SIMPLEX_SHARED: Triple = (1.0, 1.0, -1.0)  # x + y - 1 = 0
_SIMPLEX_D: Triple = (1.0, 0.0, 0.0)  # x = 0


def _require_in_simplex(p: PointLike, name: str) -> Point:
    p = as_point(p)
    if not (p.x > 0.0 and p.y > 0.0 and p.x + p.y < 1.0):
        raise SiteOutsideFrame(f"{name}={tuple(p)} is not interior to the unit simplex")
    return p


def simplex_conic(s: PointLike, t: PointLike) -> ConicCoefficients:
    """Three-edge frame: edges y=0, x+y-1=0 (shared), x=0.

    Yields x^2 + (2-k) x y + y^2 - 2x - 2y + 1 = 0 with
    k = (sx+sy-1)(tx+ty-1) / (tx * sy).
    """
    s = _require_in_simplex(s, "s")
    t = _require_in_simplex(t, "t")
    return general_bisector_conic(_SIMPLEX_A, _SIMPLEX_SHARED, _SIMPLEX_SHARED, _SIMPLEX_D, s, t)


def two_edge_conic(s: PointLike, t: PointLike) -> ConicCoefficients:
    """Two-edge frame with x=0 as E_A=E_D and y=0 as E_B=E_C.

    Yields -k x^2 + y^2 = 0 with k = (sy/tx)(ty/sx); the viable bisector is
    y = sqrt(k) x through the vanishing point of the two edges.
    """
    s = as_point(s)
    t = as_point(t)
    if min(s.x, s.y, t.x, t.y) <= 0.0:
        raise SiteOutsideFrame("sites must lie in the open first quadrant")
    x_axis: Triple = (1.0, 0.0, 0.0)
    y_axis: Triple = (0.0, 1.0, 0.0)
    return general_bisector_conic(x_axis, y_axis, y_axis, x_axis, s, t)


def four_edge_conic(s: PointLike, t: PointLike) -> ConicCoefficients:
    """Four-edge frame E_A: x=0, E_B: x=1, E_C: y=0, E_D: y=1."""
    s = as_point(s)
    t = as_point(t)
    for name, p in (("s", s), ("t", t)):
        if not (0.0 < p.x < 1.0 and 0.0 < p.y < 1.0):
            raise SiteOutsideFrame(f"{name}={tuple(p)} is not interior to the unit square")
    return general_bisector_conic(
        (1.0, 0.0, 0.0), (1.0, 0.0, -1.0), (0.0, 1.0, 0.0), (0.0, 1.0, -1.0), s, t
    )


def four_edge_discriminant(s: PointLike, t: PointLike) -> float:
    """Discriminant in the unit-square frame; equals (1-k)^2, never negative."""
    conic = four_edge_conic(s, t)
    return conic.B * conic.B - 4.0 * conic.A * conic.C


def three_edge_conic_type(s: PointLike, t: PointLike) -> ConicClass:
    """Conic type in the simplex frame; the discriminant is k(k-4).

    Equivalent to the sign of (sx+sy-1)(tx+ty-1) - 4 tx sy: both factors of
    the numerator of k are negative for interior sites, so k > 0 and the
    type flips exactly at k = 4.
    """
    return classify_conic(simplex_conic(s, t))


def conic_type_separating_line(fixed: PointLike, fixed_is: str = "s") -> Line:
    """Line in the other site's coordinates separating ellipse from hyperbola.

    Substituting the fixed site into (sx+sy-1)(tx+ty-1) - 4 tx sy = 0 leaves
    a linear equation in the free site; sites on it give parabolas.
    """
    p = _require_in_simplex(fixed, "fixed")
    w = p.x + p.y - 1.0
    if fixed_is == "s":
        return make_line(w - 4.0 * p.y, w, -w)
    if fixed_is == "t":
        return make_line(w, w - 4.0 * p.x, -w)
    raise ValueError("fixed_is must be 's' or 't'")


# ---------------------------------------------------------------------------
# Degenerate (two-dimensional) bisector regions.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DegenerateRegion:
    """A sector that is entirely equidistant from the two sites."""

    edge_pair: tuple[int, int]
    vanishing_point: HomogeneousPoint
    region: tuple[Point, ...]
    cells: tuple[Sector, ...]


def find_degenerate_regions(
    omega: ConvexPolygon,
    s: PointLike,
    t: PointLike,
    sectors: Sequence[Sector] | None = None,
) -> list[DegenerateRegion]:
    """Full-dimensional equidistant sectors of the pair, if any.

    Both sites must be collinear with the vanishing point of an edge pair
    AND a sector whose chords from both sites span exactly that edge pair
    (in the same order) must exist; its conic then vanishes identically.
    """
    s = ensure_interior(omega, s, "s")
    t = ensure_interior(omega, t, "t")
    if sectors is None:
        sectors = sector_decomposition(omega, s, t)
    line_st = line_through(s, t)
    scale = max(1.0, omega.diameter)
    out: list[DegenerateRegion] = []
    for i in range(omega.m):
        for j in range(i + 1, omega.m):
            o = line_intersection(omega.lines[i], omega.lines[j])
            n = math.sqrt(o.x * o.x + o.y * o.y + o.w * o.w)
            residual = abs(o.x * line_st.u + o.y * line_st.v + o.w * line_st.l) / n
            if residual > EPS_GEOM * scale:
                continue
            groups: dict[tuple[int, int], list[Sector]] = {}
            for sec in sectors:
                if {sec.edge_a, sec.edge_b} == {i, j} and (
                    sec.edge_c,
                    sec.edge_d,
                ) == (sec.edge_a, sec.edge_b):
                    groups.setdefault((sec.edge_a, sec.edge_b), []).append(sec)
            for cells in groups.values():
                conic = bisector_conic(cells[0])
                if conic.coefficient_scale() > 1e-8 * (1.0 + abs(conic.k)):
                    continue
                region = convex_hull([p for sec in cells for p in sec.region])
                cen = polygon_centroid(region)
                if abs(hilbert_distance(omega, s, cen) - hilbert_distance(omega, t, cen)) > 1e-7:
                    continue
                out.append(DegenerateRegion((i, j), o, tuple(region), tuple(cells)))
    out.sort(key=lambda r: -abs(_chain_area(r.region)))
    return out


def _chain_area(pts: Sequence[Point]) -> float:
    from .geometry import polygon_area

    return polygon_area(pts)


# ---------------------------------------------------------------------------
# Conic sampling inside a convex cell.
# ---------------------------------------------------------------------------


def _chain_contains(cell: Sequence[Point], p: PointLike, tol: float) -> bool:
    n = len(cell)
    for idx in range(n):
        a = cell[idx]
        b = cell[(idx + 1) % n]
        ex, ey = b.x - a.x, b.y - a.y
        ln = math.hypot(ex, ey)
        if ln <= 1e-300:
            continue
        if (ex * (p[1] - a.y) - ey * (p[0] - a.x)) / ln < -tol:
            return False
    return True


def _segment_roots(conic: ConicCoefficients, a: Point, b: Point) -> list[float]:
    """Roots of the conic along segment a->b, as parameters in [0, 1]."""
    f0 = conic.evaluate(a)
    f1 = conic.evaluate(b)
    dx, dy = b.x - a.x, b.y - a.y
    c2 = conic.A * dx * dx + conic.B * dx * dy + conic.C * dy * dy
    c1 = f1 - f0 - c2
    c0 = f0
    scale = max(abs(c2), abs(c1), abs(c0), 1e-300)
    roots: list[float] = []
    slack = 1e-9
    if abs(c2) <= 1e-14 * scale:
        if abs(c1) > 1e-14 * scale:
            roots = [-c0 / c1]
    else:
        disc = c1 * c1 - 4.0 * c2 * c0
        if disc < 0.0:
            if disc > -1e-12 * scale * scale:
                roots = [-c1 / (2.0 * c2)]
            else:
                return []
        else:
            sq = math.sqrt(disc)
            q = -0.5 * (c1 + math.copysign(sq, c1)) if c1 != 0.0 else -0.5 * sq
            if abs(q) > 1e-300:
                roots = [q / c2, c0 / q]
            else:
                roots = [0.0]
    out = []
    for u in roots:
        if -slack <= u <= 1.0 + slack:
            u = min(max(u, 0.0), 1.0)
            # One Newton polish along the segment.
            fu = conic.evaluate((a.x + u * dx, a.y + u * dy))
            dfu = 2.0 * c2 * u + c1
            if abs(dfu) > 1e-300:
                u2 = u - fu / dfu
                if -slack <= u2 <= 1.0 + slack:
                    u = min(max(u2, 0.0), 1.0)
            out.append(u)
    return sorted(set(out))


def _pencil_point(
    conic: ConicCoefficients, o: Point, phi: float
) -> Point | None:
    """Second intersection of the conic with the line through o at angle phi.

    o must lie on the conic; returns None for asymptote directions.
    """
    dx, dy = math.cos(phi), math.sin(phi)
    qd = conic.A * dx * dx + conic.B * dx * dy + conic.C * dy * dy
    gx, gy = conic.gradient(o)
    gd = gx * dx + gy * dy
    if abs(qd) <= 1e-14 * max(abs(gd), conic.coefficient_scale()):
        return None
    u = -gd / qd
    return Point(o.x + u * dx, o.y + u * dy)


def _sample_arc(
    conic: ConicCoefficients,
    o: Point,
    phi_a: float,
    phi_b: float,
    pa: Point,
    pb: Point,
    tol: float,
    depth: int,
    out: list[Point],
) -> None:
    """Refine until the chord sagitta drops below tol; appends interior points."""
    if depth > 24:
        return
    phi_m = 0.5 * (phi_a + phi_b)
    pm = _pencil_point(conic, o, phi_m)
    if pm is None:
        return
    mid = Point(0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y))
    if distance(pm, mid) <= tol and distance(pa, pb) <= 64.0 * tol:
        out.append(pm)
        return
    _sample_arc(conic, o, phi_a, phi_m, pa, pm, tol, depth + 1, out)
    out.append(pm)
    _sample_arc(conic, o, phi_m, phi_b, pm, pb, tol, depth + 1, out)


def _line_cell_segment(
    line: Line, cell: Sequence[Point], dedupe_tol: float
) -> list[Point] | None:
    """Clip a line to a convex chain; None when the overlap is empty/point."""
    from .geometry import line_eval

    n = len(cell)
    vals = [line_eval(line, p) for p in cell]
    crossings: list[Point] = []
    for idx in range(n):
        vi, vj = vals[idx], vals[(idx + 1) % n]
        a, b = cell[idx], cell[(idx + 1) % n]
        if abs(vi) <= dedupe_tol:
            crossings.append(a)
        if (vi > dedupe_tol and vj < -dedupe_tol) or (vi < -dedupe_tol and vj > dedupe_tol):
            u = vi / (vi - vj)
            crossings.append(Point(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)))
    uniq: list[Point] = []
    for p in crossings:
        if all(distance(p, q) > dedupe_tol for q in uniq):
            uniq.append(p)
    if len(uniq) < 2:
        return None
    far = max(
        ((p, q) for p in uniq for q in uniq),
        key=lambda pq: distance(pq[0], pq[1]),
    )
    if distance(far[0], far[1]) <= dedupe_tol:
        return None
    return [far[0], far[1]]


def _cell_pieces(
    omega: ConvexPolygon,
    sector: Sector,
    conic: ConicCoefficients,
    sampling_tol: float,
    equid_check,
) -> list[tuple[tuple[Point, ...], bool]]:
    """Polylines of the equidistant locus clipped to one sector."""
    cell = sector.region
    dedupe_tol = 1e-9 * max(1.0, omega.diameter)
    if conic.coefficient_scale() <= 1e-8 * (1.0 + abs(conic.k)):
        return []  # identically zero: a two-dimensional region, handled upstream

    cls = classify_conic(conic)
    if cls.tag is ConicType.DEGENERATE_LINEAR:
        pieces = []
        for ln in degenerate_factor(conic):
            on_spoke = False
            seg = _line_cell_segment(ln, cell, dedupe_tol)
            if seg is None:
                continue
            mid = Point(0.5 * (seg[0].x + seg[1].x), 0.5 * (seg[0].y + seg[1].y))
            if not _chain_contains(cell, mid, 1e-9 * max(1.0, omega.diameter)):
                continue
            if not equid_check(mid):
                continue
            # A factor collinear with a cell edge runs along a spoke.
            for i in range(len(cell)):
                a, b = cell[i], cell[(i + 1) % len(cell)]
                edge_line = line_through(a, b) if distance(a, b) > dedupe_tol else None
                if edge_line is not None and _lines_close(edge_line, ln, 1e-7):
                    on_spoke = True
                    break
            pieces.append(((seg[0], mid, seg[1]), on_spoke))
        return pieces

    # Boundary crossings.
    crossings: list[Point] = []
    n = len(cell)
    for idx in range(n):
        a, b = cell[idx], cell[(idx + 1) % n]
        for u in _segment_roots(conic, a, b):
            p = Point(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y))
            if all(distance(p, q) > dedupe_tol for q in crossings):
                crossings.append(p)
    if len(crossings) < 2:
        return []

    o = crossings[0]
    gx, gy = conic.gradient(o)
    params: list[tuple[float, Point]] = [(math.atan2(gx, -gy) % math.pi, o)]
    for p in crossings[1:]:
        params.append((math.atan2(p.y - o.y, p.x - o.x) % math.pi, p))
    params.sort(key=lambda e: e[0])

    pieces = []
    containment_tol = 1e-9 * max(1.0, omega.diameter)
    for idx in range(len(params)):
        phi_a, pa = params[idx]
        phi_b, pb = params[(idx + 1) % len(params)]
        if (idx + 1) % len(params) == 0:
            phi_b += math.pi
        if phi_b - phi_a <= 1e-13:
            continue
        phi_m = 0.5 * (phi_a + phi_b)
        pm = _pencil_point(conic, o, phi_m)
        if pm is None or not _chain_contains(cell, pm, containment_tol):
            continue
        samples: list[Point] = []
        _sample_arc(conic, o, phi_a, phi_m, pa, pm, sampling_tol, 0, samples)
        samples.append(pm)
        _sample_arc(conic, o, phi_m, phi_b, pm, pb, sampling_tol, 0, samples)
        polyline = [pa] + samples + [pb]
        cleaned: list[Point] = []
        for p in polyline:
            if not cleaned or distance(cleaned[-1], p) > 1e-13:
                cleaned.append(p)
        if len(cleaned) >= 2:
            pieces.append((tuple(cleaned), False))
    return pieces


# ---------------------------------------------------------------------------
# Full trace.
# ---------------------------------------------------------------------------


def trace_bisector(
    omega: ConvexPolygon,
    s: PointLike,
    t: PointLike,
    sectors: Sequence[Sector] | None = None,
) -> BisectorCurve:
    """Equidistant curve of two sites, stitched sector by sector.

    Raises DegeneratePair when the bisector contains a two-dimensional
    region (see find_degenerate_regions).
    """
    s = ensure_interior(omega, s, "s")
    t = ensure_interior(omega, t, "t")
    if sectors is None:
        sectors = sector_decomposition(omega, s, t)
    if find_degenerate_regions(omega, s, t, sectors):
        raise DegeneratePair("bisector contains a two-dimensional region")
    sampling_tol = SAMPLING_TOL_FACTOR * omega.diameter

    def equid_check(p: Point) -> bool:
        if omega.boundary_distance(p) <= 2.0 * interior_margin(omega):
            return False  # edge-line factors clip to the boundary; not a bisector
        return abs(hilbert_distance(omega, s, p) - hilbert_distance(omega, t, p)) <= 1e-8

    pieces: list[BisectorPiece] = []
    for sector in sectors:
        conic = bisector_conic(sector)
        for polyline, on_spoke in _cell_pieces(omega, sector, conic, sampling_tol, equid_check):
            pieces.append(BisectorPiece(sector, conic, polyline, on_spoke))
    return _stitch_pieces(omega, pieces)


def _stitch_pieces(omega: ConvexPolygon, pieces: list[BisectorPiece]) -> BisectorCurve:
    if not pieces:
        raise HilbertError("no bisector pieces found")
    # Duplicate on-spoke segments (emitted by both adjacent cells) collapse.
    uniq: list[BisectorPiece] = []
    for piece in pieces:
        dup = False
        if piece.on_spoke:
            for other in uniq:
                if other.on_spoke and (
                    distance(piece.polyline[0], other.polyline[0]) <= EPS_STITCH
                    and distance(piece.polyline[-1], other.polyline[-1]) <= EPS_STITCH
                ) or (
                    distance(piece.polyline[0], other.polyline[-1]) <= EPS_STITCH
                    and distance(piece.polyline[-1], other.polyline[0]) <= EPS_STITCH
                ):
                    dup = True
                    break
        if not dup:
            uniq.append(piece)
    pieces = uniq

    def on_boundary(p: Point) -> bool:
        return omega.boundary_distance(p) <= 1e-6 * max(1.0, omega.diameter)

    start_idx = None
    start_reversed = False
    for i, piece in enumerate(pieces):
        if on_boundary(piece.polyline[0]):
            start_idx, start_reversed = i, False
            break
        if on_boundary(piece.polyline[-1]):
            start_idx, start_reversed = i, True
            break
    if start_idx is None:
        raise HilbertError("bisector does not reach the domain boundary")

    remaining = list(range(len(pieces)))
    remaining.remove(start_idx)
    first = pieces[start_idx]
    if start_reversed:
        first = BisectorPiece(first.sector, first.conic, tuple(reversed(first.polyline)), first.on_spoke)
    chain = [first]
    while remaining:
        tail = chain[-1].polyline[-1]
        best = None
        best_d = EPS_STITCH
        for i in remaining:
            cand = pieces[i]
            d0 = distance(tail, cand.polyline[0])
            d1 = distance(tail, cand.polyline[-1])
            if d0 <= best_d:
                best, best_d, best_rev = i, d0, False
            if d1 <= best_d:
                best, best_d, best_rev = i, d1, True
        if best is None:
            break
        remaining.remove(best)
        nxt = pieces[best]
        if best_rev:
            nxt = BisectorPiece(nxt.sector, nxt.conic, tuple(reversed(nxt.polyline)), nxt.on_spoke)
        chain.append(nxt)
    leftovers = [pieces[i] for i in remaining]
    long_leftovers = [
        p
        for p in leftovers
        if distance(p.polyline[0], p.polyline[-1]) > 4.0 * EPS_STITCH
    ]
    if long_leftovers or not on_boundary(chain[-1].polyline[-1]):
        raise HilbertError("bisector pieces do not stitch into a single curve")
    return BisectorCurve(tuple(chain), (chain[0].polyline[0], chain[-1].polyline[-1]))


def bisector_residuals(
    omega: ConvexPolygon, s: PointLike, t: PointLike, curve: BisectorCurve
) -> np.ndarray:
    """|H(s,p) - H(t,p)| over curve samples evaluable by the metric.

    Samples on the domain boundary itself are skipped: the metric diverges
    there, so the equidistance oracle is undefined.
    """
    margin = 2.0 * max(1e-12, omega.diameter) * 1e-6
    vals = []
    for p in curve.sample_points():
        if omega.boundary_distance(p) <= margin:
            continue
        vals.append(abs(hilbert_distance(omega, s, p) - hilbert_distance(omega, t, p)))
    return np.array(vals)
