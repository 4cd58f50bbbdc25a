"""Exception types raised by polyprint."""


class PolyprintError(ValueError):
    """Base class for all polyprint errors."""


class MeshError(PolyprintError):
    pass


class IndexOutOfRange(MeshError):
    pass


class DuplicateIndexInFace(MeshError):
    pass


class DegenerateFace(MeshError):
    pass


class NonFiniteCoordinate(MeshError):
    pass


class NotARotation(MeshError):
    pass


class NotClosedMesh(MeshError):
    """Raised when an operation needs a watertight, consistently wound mesh."""


class InvertedMesh(MeshError):
    """Raised when a closed mesh's faces point inward for its declared convention."""


class FaceIndexOutOfRange(MeshError):
    pass


class UnsupportedBaseCount(PolyprintError):
    pass


class NonPositiveSide(PolyprintError):
    pass


class NonPositiveFactor(PolyprintError):
    pass


class OnAxisPoint(PolyprintError):
    pass


class MalformedStl(PolyprintError):
    pass


class TooManyFacets(PolyprintError):
    pass
