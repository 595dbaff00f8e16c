"""Dynamic Hilbert Voronoi diagrams.

Insertion follows the incremental scheme: for a new site t, every existing
cell is clipped against its two-site region, Vor(s) := Vor(s) n Vor_{s,t}(s),
and the new cell is the intersection of the new site's two-site regions over
all existing sites.  Two-site regions come from the traced bisector; pairs
whose bisector contains a two-dimensional region are detected first and the
region is assigned by a deterministic tie rule (lexicographically smaller
site id).

Polygon booleans are delegated to shapely; all metric and conic work is
done by the local kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
import shapely
from shapely.geometry import LineString, MultiPolygon
from shapely.geometry import Point as ShPoint
from shapely.geometry import Polygon as ShPolygon
from shapely.geometry.polygon import orient as sh_orient
from shapely.ops import split as sh_split

from .bisector import (
    BisectorCurve,
    _cell_pieces,
    bisector_conic,
    find_degenerate_regions,
    trace_bisector,
)
from .errors import (
    DegeneratePair,
    DuplicateSite,
    EmptyDiagram,
    HilbertError,
    InvalidPolygon,
    PointsCoincide,
    SiteCoincident,
    SiteTooCloseToBoundary,
    UnknownSite,
)
from .geometry import (
    ConvexPolygon,
    HomogeneousPoint,
    Point,
    PointLike,
    Segment,
    as_point,
    clip_polygon_halfplane,
    distance,
    line_eval,
    line_intersection,
    line_point_direction,
    line_through,
)
from .metric import (
    ensure_interior,
    hilbert_distance,
    hilbert_distance_batch,
    interior_margin,
    sector_decomposition,
)
from .tolerances import EPS_GEOM, SAMPLING_TOL_FACTOR, SITE_SEPARATION_FACTOR


@dataclass(frozen=True)
class Site:
    id: str
    pos: Point


class EdgeProvenance(NamedTuple):
    kind: str  # 'domain' | 'bisector' | 'degeneracy' | 'unknown'
    pair: tuple[str, str] | None = None
    domain_edge: int | None = None
    sector_edges: tuple[int, int, int, int] | None = None
    conic: tuple[float, float, float, float, float, float] | None = None
    k: float | None = None


@dataclass(eq=False)
class VoronoiCell:
    site: str
    boundary: tuple[Point, ...]  # closed CCW polyline, last vertex != first
    provenance: tuple[EdgeProvenance, ...]  # one entry per boundary edge
    geometry: ShPolygon

    @property
    def area(self) -> float:
        return float(self.geometry.area)


@dataclass(frozen=True)
class DegeneracyReport:
    pair: tuple[str, str]
    vanishing_point: HomogeneousPoint
    region: ConvexPolygon
    tie_assignment: str


@dataclass(frozen=True)
class ZRegion:
    pair: tuple[str, str]
    quad: ConvexPolygon


class CrossingEvent(NamedTuple):
    u: float
    vanishing_point: HomogeneousPoint
    edge_pair: tuple[int, int]


def _grid(omega: ConvexPolygon) -> float:
    """Snap grid for polygon booleans.

    Full-precision GEOS overlay misbehaves on cells whose rings run nearly
    parallel to the domain boundary (thin crescents near vertices); the
    fixed-precision overlay is robust and perturbs coordinates by at most
    the grid size, far below every geometric tolerance used here.
    """
    return 1e-12 * max(1.0, omega.diameter)


def _polygonal(geom):
    """Polygonal part of a boolean result; snapping can emit line/point dust."""
    if isinstance(geom, (ShPolygon, MultiPolygon)):
        return geom
    polys = [g for g in getattr(geom, "geoms", []) if isinstance(g, ShPolygon) and g.area > 0.0]
    if not polys:
        return ShPolygon()
    if len(polys) == 1:
        return polys[0]
    return MultiPolygon(polys)


def _gintersection(a, b, grid: float):
    return _polygonal(shapely.intersection(a, b, grid_size=grid))


def _gunion(parts, grid: float):
    return _polygonal(shapely.union_all(parts, grid_size=grid))


@dataclass(eq=False)
class VoronoiDiagram:
    domain: ConvexPolygon
    sites: tuple[Site, ...]
    cells: tuple[VoronoiCell, ...]
    degeneracies: tuple[DegeneracyReport, ...]

    def site_by_id(self, site_id: str) -> Site:
        for s in self.sites:
            if s.id == site_id:
                return s
        raise UnknownSite(f"unknown site {site_id!r}")

    def cell_by_id(self, site_id: str) -> VoronoiCell:
        for c in self.cells:
            if c.site == site_id:
                return c
        raise UnknownSite(f"unknown site {site_id!r}")

    def locate(self, q: PointLike) -> str | None:
        """Site id of the cell containing q (None if q is outside all cells)."""
        p = ShPoint(q[0], q[1])
        best = None
        best_d = math.inf
        for c in self.cells:
            if c.geometry.covers(p):
                return c.site
            d = c.geometry.distance(p)
            if d < best_d:
                best, best_d = c.site, d
        return best if best_d <= 1e-9 * max(1.0, self.domain.diameter) else None


def new_diagram(domain) -> VoronoiDiagram:
    """Empty diagram over a validated convex polygon."""
    if not isinstance(domain, ConvexPolygon):
        try:
            domain = ConvexPolygon(domain)
        except HilbertError:
            raise
        except Exception as exc:  # noqa: BLE001 - normalize arbitrary input issues
            raise InvalidPolygon(str(exc)) from exc
    return VoronoiDiagram(domain, (), (), ())


def nearest_site(diagram: VoronoiDiagram, q: PointLike) -> str:
    """Brute-force argmin of the Hilbert distance; ties go to the smaller id."""
    if not diagram.sites:
        raise EmptyDiagram("diagram has no sites")
    q = ensure_interior(diagram.domain, q, "query point")
    best_id = None
    best = math.inf
    for s in sorted(diagram.sites, key=lambda s: s.id):
        d = hilbert_distance(diagram.domain, q, s.pos)
        if d < best:
            best, best_id = d, s.id
    return best_id


# ---------------------------------------------------------------------------
# Two-site partitions.
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class _PairPartition:
    pair: tuple[str, str]
    geoms: dict[str, ShPolygon]
    curve: BisectorCurve | None
    curve_lines: list[tuple[LineString, object]]  # (piece linestring, piece)
    reports: tuple[DegeneracyReport, ...]
    degenerate_exteriors: list[LineString]


def _extend_polyline(pts: Sequence[Point], delta: float) -> list[tuple[float, float]]:
    out = [(p.x, p.y) for p in pts]
    if len(out) >= 2:
        (x0, y0), (x1, y1) = out[0], out[1]
        n = math.hypot(x1 - x0, y1 - y0)
        if n > 0:
            out.insert(0, (x0 - delta * (x1 - x0) / n, y0 - delta * (y1 - y0) / n))
        (x0, y0), (x1, y1) = out[-1], out[-2]
        n = math.hypot(x1 - x0, y1 - y0)
        if n > 0:
            out.append((x0 - delta * (x1 - x0) / n, y0 - delta * (y1 - y0) / n))
    return out


def _split_by_polyline(poly: ShPolygon, pts: Sequence[Point], delta: float):
    line = LineString(_extend_polyline(pts, delta))
    try:
        parts = sh_split(poly, line)
        geoms = [g for g in parts.geoms if g.area > 0.0]
        if len(geoms) >= 2:
            return geoms
    except Exception:  # noqa: BLE001 - fall through to unsplit
        pass
    return [poly]


def _pair_partition(omega: ConvexPolygon, sa: Site, sb: Site) -> _PairPartition:
    """Partition of the domain into the two-site cells of sa and sb.

    The region of the lexicographically smaller id receives any equidistant
    two-dimensional region.
    """
    if sa.id > sb.id:
        sa, sb = sb, sa
    pair = (sa.id, sb.id)
    sectors = sector_decomposition(omega, sa.pos, sb.pos)
    regions = find_degenerate_regions(omega, sa.pos, sb.pos, sectors)
    omega_sh = ShPolygon([(v.x, v.y) for v in omega.vertices])
    delta = 1e-3 * omega.diameter

    def closer_to_a(p) -> bool:
        return hilbert_distance(omega, p, sa.pos) <= hilbert_distance(omega, p, sb.pos)

    if not regions:
        curve = trace_bisector(omega, sa.pos, sb.pos, sectors)
        samples = curve.sample_points()
        parts = _split_by_polyline(omega_sh, samples, delta)
        if len(parts) < 2:
            raise HilbertError("bisector failed to split the domain")
        bucket_a: list[ShPolygon] = []
        bucket_b: list[ShPolygon] = []
        for g in parts:
            rep = g.representative_point()
            (bucket_a if closer_to_a((rep.x, rep.y)) else bucket_b).append(g)
        geom_a = _gunion(bucket_a, _grid(omega))
        geom_b = _gunion(bucket_b, _grid(omega))
        curve_lines = [
            (LineString([(p.x, p.y) for p in piece.polyline]), piece)
            for piece in curve.pieces
            if len(piece.polyline) >= 2
        ]
        return _PairPartition(pair, {sa.id: geom_a, sb.id: geom_b}, curve, curve_lines, (), [])

    # Degenerate pair: classify the arrangement cell by cell.
    winner = sa.id  # pair is ordered, sa.id < sb.id
    lump_cells = {id(sec) for reg in regions for sec in reg.cells}
    bucket_a, bucket_b = [], []
    curve_lines = []
    sampling_tol = SAMPLING_TOL_FACTOR * omega.diameter

    def equid_check(p) -> bool:
        if omega.boundary_distance(p) <= 2.0 * interior_margin(omega):
            return False
        return abs(hilbert_distance(omega, sa.pos, p) - hilbert_distance(omega, sb.pos, p)) <= 1e-8

    for sec in sectors:
        cell_poly = ShPolygon([(p.x, p.y) for p in sec.region])
        if cell_poly.area <= 0.0:
            continue
        if id(sec) in lump_cells:
            (bucket_a if winner == sa.id else bucket_b).append(cell_poly)
            continue
        conic = bisector_conic(sec)
        pieces = _cell_pieces(omega, sec, conic, sampling_tol, equid_check)
        if not pieces:
            rep = cell_poly.representative_point()
            (bucket_a if closer_to_a((rep.x, rep.y)) else bucket_b).append(cell_poly)
            continue
        fragments = [cell_poly]
        for polyline, _ in pieces:
            nxt = []
            for frag in fragments:
                nxt.extend(_split_by_polyline(frag, polyline, delta))
            fragments = nxt
            curve_lines.append((LineString([(p.x, p.y) for p in polyline]), None))
        for frag in fragments:
            rep = frag.representative_point()
            (bucket_a if closer_to_a((rep.x, rep.y)) else bucket_b).append(frag)
    # Fragments from different cells are not identically noded along shared
    # edges; the fixed-precision union heals the hairline cracks.
    geom_a = _gunion(bucket_a, _grid(omega))
    geom_b = _gunion(bucket_b, _grid(omega))
    reports = tuple(
        DegeneracyReport(
            pair=pair,
            vanishing_point=reg.vanishing_point,
            region=ConvexPolygon(reg.region, strict=False),
            tie_assignment=winner,
        )
        for reg in regions
    )
    degen_ext = [ShPolygon([(p.x, p.y) for p in reg.region]).exterior for reg in regions]
    return _PairPartition(pair, {sa.id: geom_a, sb.id: geom_b}, None, curve_lines, reports, degen_ext)


# ---------------------------------------------------------------------------
# Insertion and rebuilds.
# ---------------------------------------------------------------------------


def _as_site(site, pos=None) -> Site:
    if isinstance(site, Site):
        return Site(str(site.id), as_point(site.pos))
    return Site(str(site), as_point(pos))


def _main_component(geom, site_pos: Point):
    """Polygonal component of a boolean result (drops line/point dust)."""
    if isinstance(geom, ShPolygon):
        return geom
    polys = [g for g in getattr(geom, "geoms", []) if isinstance(g, ShPolygon) and g.area > 0.0]
    if not polys:
        raise HilbertError("cell geometry degenerated to nothing")
    inside = [g for g in polys if g.covers(ShPoint(site_pos.x, site_pos.y))]
    if inside:
        return inside[0]
    return max(polys, key=lambda g: g.area)


class _ProvenanceIndex:
    """Spatial index over all pair bisector pieces and degeneracy rings."""

    def __init__(self, pair_lines: dict):
        self.geoms = []
        self.payload = []
        for pair, (curve_lines, degen_ext) in pair_lines.items():
            for line, piece in curve_lines:
                self.geoms.append(line)
                self.payload.append(("bisector", pair, piece))
            for ext in degen_ext:
                self.geoms.append(ext)
                self.payload.append(("degeneracy", pair, None))
        self.tree = shapely.STRtree(self.geoms) if self.geoms else None

    def match(self, points: np.ndarray, tol: float) -> list:
        out = [None] * len(points)
        if self.tree is None or len(points) == 0:
            return out
        pts = shapely.points(points)
        idx = self.tree.query(pts, predicate="dwithin", distance=tol)
        candidates: dict[int, list[int]] = {}
        for src, gi in zip(idx[0], idx[1]):
            candidates.setdefault(int(src), []).append(int(gi))
        for src, gis in candidates.items():
            if len(gis) > 1:
                dists = shapely.distance(shapely.points(points[src]), [self.geoms[g] for g in gis])
                gis = [gis[int(np.argmin(dists))]]
            out[src] = self.payload[gis[0]]
        return out


def _provenance_from_match(match) -> EdgeProvenance:
    kind, pair, piece = match
    if kind == "degeneracy":
        return EdgeProvenance(kind="degeneracy", pair=pair)
    if piece is None:
        return EdgeProvenance(kind="bisector", pair=pair)
    return EdgeProvenance(
        kind="bisector",
        pair=pair,
        sector_edges=piece.sector.edges,
        conic=piece.conic.as_tuple(),
        k=piece.conic.k,
    )


class _InheritIndex:
    """Nearest-old-edge lookup so re-clipped cells keep their provenance."""

    def __init__(self, cell: VoronoiCell):
        n = len(cell.boundary)
        segs = []
        for i in range(n):
            a = cell.boundary[i]
            b = cell.boundary[(i + 1) % n]
            segs.append(LineString([(a.x, a.y), (b.x, b.y)]))
        self.tree = shapely.STRtree(segs)
        self.segs = segs
        self.provenance = cell.provenance

    def lookup(self, point, tol: float) -> EdgeProvenance | None:
        idx = self.tree.query(point, predicate="dwithin", distance=tol)
        if len(idx) == 0:
            return None
        if len(idx) > 1:
            dists = shapely.distance(point, [self.segs[i] for i in idx])
            idx = [idx[int(np.argmin(dists))]]
        return self.provenance[int(idx[0])]


def _build_cell(
    omega: ConvexPolygon,
    site: Site,
    geom,
    index: _ProvenanceIndex,
    old_cell: VoronoiCell | None = None,
) -> VoronoiCell:
    geom = _main_component(geom, site.pos)
    geom = sh_orient(geom, sign=1.0)
    coords = list(geom.exterior.coords)[:-1]
    boundary = tuple(Point(x, y) for x, y in coords)
    k = len(boundary)
    mids = np.empty((k, 2))
    for i in range(k):
        a = boundary[i]
        b = boundary[(i + 1) % k]
        mids[i, 0] = (a.x + b.x) / 2.0
        mids[i, 1] = (a.y + b.y) / 2.0
    tol = 1e-6 * max(1.0, omega.diameter)
    inner = mids @ np.vstack([omega._arr_u, omega._arr_v]) + omega._arr_l
    dom_edge = np.argmin(inner, axis=1)
    dom_dist = inner[np.arange(k), dom_edge]
    matches = index.match(mids, tol)
    inherit = None
    prov = []
    for i in range(k):
        if dom_dist[i] <= tol:
            prov.append(EdgeProvenance(kind="domain", domain_edge=int(dom_edge[i])))
        elif matches[i] is not None:
            prov.append(_provenance_from_match(matches[i]))
        else:
            entry = None
            if old_cell is not None:
                if inherit is None:
                    inherit = _InheritIndex(old_cell)
                entry = inherit.lookup(ShPoint(mids[i, 0], mids[i, 1]), tol)
            prov.append(entry if entry is not None else EdgeProvenance(kind="unknown"))
    return VoronoiCell(site.id, boundary, tuple(prov), geom)


def insert_site(diagram: VoronoiDiagram, site, pos=None) -> VoronoiDiagram:
    """New diagram with the site inserted via pairwise two-site regions."""
    site = _as_site(site, pos)
    omega = diagram.domain
    for s in diagram.sites:
        if s.id == site.id:
            raise DuplicateSite(f"site id {site.id!r} already present")
    if omega.boundary_distance(site.pos) <= interior_margin(omega):
        raise SiteTooCloseToBoundary(f"site {site.id!r} too close to the boundary")
    sep = SITE_SEPARATION_FACTOR * omega.diameter
    for s in diagram.sites:
        if distance(s.pos, site.pos) < sep:
            raise SiteCoincident(f"site {site.id!r} coincides with {s.id!r}")

    reports: list[DegeneracyReport] = list(diagram.degeneracies)
    pair_lines: dict = {}
    omega_sh = ShPolygon([(v.x, v.y) for v in omega.vertices])
    grid = _grid(omega)
    new_geom = omega_sh
    updated: dict[str, object] = {}
    for s in diagram.sites:
        part = _pair_partition(omega, s, site)
        pair_lines[part.pair] = (part.curve_lines, part.degenerate_exteriors)
        reports.extend(part.reports)
        old_cell = diagram.cell_by_id(s.id)
        updated[s.id] = _gintersection(old_cell.geometry, part.geoms[s.id], grid)
        new_geom = _gintersection(new_geom, part.geoms[site.id], grid)

    # Index only this insertion's bisectors; edges surviving from before
    # inherit their provenance from the previous cell.
    index = _ProvenanceIndex(pair_lines)
    sites = tuple(list(diagram.sites) + [site])
    cells = []
    for s in sorted(sites, key=lambda s: s.id):
        if s.id == site.id:
            cells.append(_build_cell(omega, s, new_geom, index))
        else:
            cells.append(_build_cell(omega, s, updated[s.id], index, diagram.cell_by_id(s.id)))
    return VoronoiDiagram(omega, sites, tuple(cells), tuple(reports))


def _rebuild(omega: ConvexPolygon, sites: Sequence[Site]) -> VoronoiDiagram:
    d = VoronoiDiagram(omega, (), (), ())
    for s in sorted(sites, key=lambda s: s.id):
        d = insert_site(d, s)
    return d


def remove_site(diagram: VoronoiDiagram, site_id: str) -> VoronoiDiagram:
    """Rebuild from scratch (in id order) without the site."""
    diagram.site_by_id(site_id)
    remaining = [s for s in diagram.sites if s.id != site_id]
    return _rebuild(diagram.domain, remaining)


def move_site(diagram: VoronoiDiagram, site_id: str, new_pos: PointLike) -> VoronoiDiagram:
    """Rebuild from scratch with the site at its new position."""
    diagram.site_by_id(site_id)
    new_pos = as_point(new_pos)
    sites = [Site(s.id, new_pos if s.id == site_id else s.pos) for s in diagram.sites]
    if diagram.domain.boundary_distance(new_pos) <= interior_margin(diagram.domain):
        raise SiteTooCloseToBoundary(f"site {site_id!r} too close to the boundary")
    return _rebuild(diagram.domain, sites)


# ---------------------------------------------------------------------------
# Degeneracy queries.
# ---------------------------------------------------------------------------


def detect_degenerate_pair(
    omega: ConvexPolygon,
    s: PointLike,
    t: PointLike,
    ids: tuple[str, str] = ("s", "t"),
) -> DegeneracyReport | None:
    """Largest equidistant two-dimensional region of the pair, if any."""
    regions = find_degenerate_regions(omega, s, t)
    if not regions:
        return None
    reg = regions[0]
    pair = tuple(sorted(ids))
    return DegeneracyReport(
        pair=pair,
        vanishing_point=reg.vanishing_point,
        region=ConvexPolygon(reg.region, strict=False),
        tie_assignment=pair[0],
    )


def z_region(
    omega: ConvexPolygon,
    s: PointLike,
    t: PointLike,
    pair: tuple[str, str] = ("s", "t"),
) -> ZRegion:
    """Quadrilateral Z = intersection over edge pairs (i,j) of the wedge
    between rays O_ij->s and O_ij->t, clipped to the domain.

    Every Hilbert ball through both sites contains Z.  Z collapses to the
    segment st exactly when the sites are collinear with some vanishing
    point; that case (and the fully degenerate pair) is rejected.
    """
    s = ensure_interior(omega, s, "s")
    t = ensure_interior(omega, t, "t")
    if distance(s, t) <= EPS_GEOM * max(1.0, omega.diameter):
        raise PointsCoincide("sites coincide")
    scale = max(1.0, omega.diameter)
    line_st = line_through(s, t)
    chain: list[Point] = list(omega.vertices)
    for i in range(omega.m):
        for j in range(i + 1, omega.m):
            o = line_intersection(omega.lines[i], omega.lines[j])
            n = math.sqrt(o.x * o.x + o.y * o.y + o.w * o.w)
            if abs(o.x * line_st.u + o.y * line_st.v + o.w * line_st.l) / n <= EPS_GEOM * scale:
                raise DegeneratePair(
                    f"sites are collinear with the vanishing point of edges {i},{j}; "
                    "Z collapses to the segment"
                )
            if abs(o.w) > 1e-12 * n:
                op = Point(o.x / o.w, o.y / o.w)
                ls = line_through(s, op)
                lt = line_through(t, op)
            else:
                ls = line_point_direction(s, (o.x, o.y))
                lt = line_point_direction(t, (o.x, o.y))
            side_s = 1 if line_eval(ls, t) > 0 else -1
            side_t = 1 if line_eval(lt, s) > 0 else -1
            chain = clip_polygon_halfplane(chain, ls, side_s)
            if chain:
                chain = clip_polygon_halfplane(chain, lt, side_t)
            if not chain:
                raise HilbertError("Z-region clipped to nothing")
    quad = ConvexPolygon(chain, strict=False)
    return ZRegion(tuple(sorted(pair)), quad)


def crossing_events(
    omega: ConvexPolygon, moving: Segment, other: PointLike
) -> list[CrossingEvent]:
    """Motion parameters u where moving(u), the other site, and a vanishing
    point O_ij are collinear and the degenerate sector exists."""
    a = ensure_interior(omega, moving.a, "motion start")
    b = ensure_interior(omega, moving.b, "motion end")
    other = ensure_interior(omega, other, "other site")
    events: list[CrossingEvent] = []
    for i in range(omega.m):
        for j in range(i + 1, omega.m):
            o = line_intersection(omega.lines[i], omega.lines[j])
            n = math.sqrt(o.x * o.x + o.y * o.y + o.w * o.w)
            ox, oy, ow = o.x / n, o.y / n, o.w / n

            def coll(p: Point) -> float:
                # det of rows (p,1), (other,1), (ox,oy,ow)
                return (
                    p.x * (other.y * ow - oy)
                    - p.y * (other.x * ow - ox)
                    + (other.x * oy - other.y * ox)
                )

            d0 = coll(a)
            d1 = coll(b)
            if abs(d1 - d0) <= 1e-15 * max(1.0, abs(d0), abs(d1)):
                continue
            u = d0 / (d0 - d1)
            if not (-1e-12 <= u <= 1.0 + 1e-12):
                continue
            u = min(max(u, 0.0), 1.0)
            p = Point(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y))
            if distance(p, other) <= EPS_GEOM * max(1.0, omega.diameter):
                continue
            regions = find_degenerate_regions(omega, p, other)
            if any(reg.edge_pair == (i, j) for reg in regions):
                events.append(CrossingEvent(u, o, (i, j)))
    events.sort(key=lambda e: (e.u, e.edge_pair))
    deduped: list[CrossingEvent] = []
    for e in events:
        if not any(
            abs(e.u - f.u) <= 1e-9 and e.edge_pair == f.edge_pair for f in deduped
        ):
            deduped.append(e)
    return deduped


# ---------------------------------------------------------------------------
# Grid oracle.
# ---------------------------------------------------------------------------


def grid_check(diagram: VoronoiDiagram, n: int) -> tuple[int, int]:
    """Compare cell labels against the brute-force nearest site on an n x n
    grid, excluding a sampling-tolerance band around cell boundaries.

    Returns (mismatches, points checked).
    """
    omega = diagram.domain
    if not diagram.sites:
        return (0, 0)
    xs = [v.x for v in omega.vertices]
    ys = [v.y for v in omega.vertices]
    gx = np.linspace(min(xs), max(xs), n)
    gy = np.linspace(min(ys), max(ys), n)
    pts = np.array([(x, y) for x in gx for y in gy])
    margin = max(interior_margin(omega) * 2.0, 1e-9)
    inner = np.array([omega.boundary_distance(p) > margin for p in pts])
    pts = pts[inner]
    site_order = sorted(diagram.sites, key=lambda s: s.id)
    dists = np.column_stack(
        [hilbert_distance_batch(omega, s.pos, pts) for s in site_order]
    )
    best = np.min(dists, axis=1)
    col = {s.id: j for j, s in enumerate(site_order)}
    band = SAMPLING_TOL_FACTOR * omega.diameter
    # Exactly equidistant regions (degenerate pairs) make the argmin a coin
    # flip at float precision; a label agrees when its distance is optimal
    # up to noise.  Real mis-assignments are off by the sampling scale.
    tie_tol = 1e-9
    mismatches = 0
    checked = 0
    for i, row in enumerate(pts):
        p = ShPoint(row[0], row[1])
        label = None
        skip = False
        for c in diagram.cells:
            if c.geometry.covers(p):
                if c.geometry.exterior.distance(p) <= band:
                    skip = True
                label = c.site
                break
        if label is None or skip:
            continue
        checked += 1
        if dists[i, col[label]] > best[i] + tie_tol:
            mismatches += 1
    return mismatches, checked
