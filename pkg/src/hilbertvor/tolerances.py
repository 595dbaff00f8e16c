"""Numeric tolerances shared across the package.

All computation is in 64-bit floats.  Absolute tolerances assume domains at
roughly unit scale; scale-dependent ones are expressed as factors of the
domain diameter and resolved where the domain is known.
"""

# Sign predicates (orientation, collinearity, incidence).
EPS_GEOM = 1e-9

# Matrix / determinant singularity threshold.
EPS_SINGULAR = 1e-12

# Consecutive bisector pieces must share endpoints within this distance.
EPS_STITCH = 1e-6

# Sites (and any point fed to the metric) must be at least this fraction of
# the domain diameter away from the boundary; the metric diverges there.
INTERIOR_MARGIN_FACTOR = 1e-6

# Max sagitta of a sampled conic polyline, as a fraction of domain diameter.
SAMPLING_TOL_FACTOR = 1e-3

# Minimum pairwise site separation, as a fraction of domain diameter.
SITE_SEPARATION_FACTOR = 1e-6


def discriminant_tolerance(a: float, b: float, c: float) -> float:
    """Threshold under which B^2-4AC counts as zero (parabolic)."""
    return 1e-9 * max(a * a, b * b, c * c, 1.0)
