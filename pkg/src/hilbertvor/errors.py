"""Exception taxonomy.

Two families matter to callers: `InputError` (bad arguments, CLI exit code 2)
and `DegeneracyError` (a geometric degeneracy was detected, CLI exit code 3).
Everything else derives from `HilbertError`.
"""


class HilbertError(Exception):
    """Base class for all package errors."""


class InputError(HilbertError):
    """Invalid input; maps to CLI exit code 2."""


class DegeneracyError(HilbertError):
    """Geometric degeneracy detected; maps to CLI exit code 3."""


class InvalidPolygon(InputError):
    pass


class CoincidentLines(InputError):
    pass


class NotCollinear(InputError):
    pass


class CoincidentPoints(InputError):
    pass


class DegenerateQuad(InputError):
    pass


class DegenerateTriangle(InputError):
    pass


class ImageAtInfinity(InputError):
    pass


class PointsCoincide(InputError):
    pass


class PointNotInterior(InputError):
    pass


class SiteOnEdgeLine(InputError):
    pass


class SiteOutsideFrame(InputError):
    pass


class NotDegenerate(InputError):
    pass


class DegeneratePair(DegeneracyError):
    """The bisector of the pair contains a two-dimensional region."""


class DuplicateSite(InputError):
    pass


class SiteCoincident(InputError):
    pass


class SiteTooCloseToBoundary(InputError):
    pass


class UnknownSite(InputError):
    pass


class EmptyDiagram(InputError):
    pass
