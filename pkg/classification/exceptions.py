class SympentError(Exception):
    """Base class for every domain error raised by sympent."""

    exit_code = 3


class BadDimension(SympentError):
    pass


class BadIndex(SympentError):
    pass


class NotAState(SympentError):
    pass


class UnsupportedRegion(SympentError):
    exit_code = 4


class PointNotOnConic(SympentError):
    pass


class SingularTangent(SympentError):
    pass


class LineThroughOrigin(SympentError):
    pass


class OriginHasNoPolar(SympentError):
    pass


class DegenerateConic(SympentError):
    pass


class ShapeMismatch(SympentError):
    pass


class NotUnitTrace(SympentError):
    pass


class NotSkewUnitary(SympentError):
    pass


class ParamsOutsideRegion(SympentError):
    pass


class EpsTooLarge(SympentError):
    pass


class TableMismatch(SympentError):
    """A closed-form table row disagrees with the tangent/pole pipeline."""


class NotHermitian(SympentError):
    pass
