"""Exception hierarchy shared by every ffgeom module."""


class FFGeomError(Exception):
    """Base class for all library errors."""


class ZeroInverseError(FFGeomError, ZeroDivisionError):
    pass


class DegeneratePairError(FFGeomError, ValueError):
    """Bisector requested for a pair of equal points."""


class InvalidMatrixError(FFGeomError, ValueError):
    pass


class IsotropicLineError(FFGeomError, ValueError):
    """No reflection fixes an isotropic line."""


class InvalidCirclePairError(FFGeomError, ValueError):
    pass


class InvalidQuadrupleError(FFGeomError, ValueError):
    pass


class InvalidKindError(FFGeomError, ValueError):
    pass


class ConstructionError(FFGeomError, ValueError):
    pass


class FormatError(FFGeomError, ValueError):
    """Malformed point-set text."""


class InvalidDistanceError(FFGeomError, ValueError):
    pass


class SizeGuardError(FFGeomError, ValueError):
    """Requested object is too large to build densely."""


class InvalidInputError(FFGeomError, ValueError):
    pass


class ConvergenceError(FFGeomError, RuntimeError):
    pass
