"""Shared helpers: random convex polygons and interior site sampling."""

from __future__ import annotations

import numpy as np
import pytest

from hilbertvor.geometry import ConvexPolygon, Point, convex_hull
from hilbertvor.metric import interior_margin


def random_convex_polygon(rng: np.random.Generator, max_m: int = 12, min_m: int = 3) -> ConvexPolygon:
    """Convex hull of random points, retried until strictly convex with the
    requested vertex-count range."""
    for _ in range(200):
        pts = rng.uniform(0.0, 1.0, size=(4 * max_m, 2))
        hull = convex_hull(pts)
        if not (min_m <= len(hull) <= max_m):
            continue
        try:
            return ConvexPolygon(hull)
        except Exception:
            continue
    raise RuntimeError("failed to generate a random convex polygon")


def random_interior_point(
    rng: np.random.Generator, omega: ConvexPolygon, margin_factor: float = 0.02
) -> Point:
    xs = [v.x for v in omega.vertices]
    ys = [v.y for v in omega.vertices]
    margin = max(margin_factor * omega.diameter, 2.0 * interior_margin(omega))
    for _ in range(10000):
        p = Point(rng.uniform(min(xs), max(xs)), rng.uniform(min(ys), max(ys)))
        if omega.boundary_distance(p) > margin:
            return p
    raise RuntimeError("failed to sample an interior point")


@pytest.fixture
def unit_square() -> ConvexPolygon:
    return ConvexPolygon([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def unit_triangle() -> ConvexPolygon:
    return ConvexPolygon([(0, 0), (1, 0), (0, 1)])
