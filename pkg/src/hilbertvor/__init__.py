"""Hilbert-metric geometry on convex polygons.

Distances, balls, spokes and sectors, per-sector conic bisectors, and
dynamically updatable Voronoi diagrams, with JSON/SVG export, a batch CLI,
and an HTTP protocol service.
"""

from .errors import (
    DegeneracyError,
    DegeneratePair,
    HilbertError,
    InputError,
)
from .geometry import (
    ConvexPolygon,
    HomogeneousPoint,
    Line,
    Point,
    ProjectiveMap,
    Segment,
    clip_polygon_halfplane,
    cross_ratio,
    line_intersection,
    line_through,
    make_line,
    map_quad_to_unit_square,
    map_triangle_to_unit_simplex,
    orient,
    point_line_distance,
)
from .metric import (
    Chord,
    HilbertBall,
    Sector,
    Spoke,
    chord,
    funk_distance,
    geodesic_additivity_holds,
    hilbert_ball,
    hilbert_distance,
    point_at_distance,
    sector_decomposition,
    spokes,
)
from .bisector import (
    BisectorCurve,
    BisectorPiece,
    ConicClass,
    ConicCoefficients,
    ConicType,
    bisector_conic,
    classify_conic,
    conic_type_separating_line,
    degenerate_factor,
    four_edge_discriminant,
    simplex_conic,
    general_bisector_conic,
    three_edge_conic_type,
    trace_bisector,
    two_edge_conic,
)
from .voronoi import (
    DegeneracyReport,
    Site,
    VoronoiCell,
    VoronoiDiagram,
    ZRegion,
    crossing_events,
    detect_degenerate_pair,
    insert_site,
    move_site,
    nearest_site,
    new_diagram,
    remove_site,
    z_region,
)

__version__ = "0.1.0"
