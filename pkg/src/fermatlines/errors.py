"""Exception hierarchy shared by all modules."""


class FermatError(Exception):
    """Base class for every error raised by this package."""


# field tower
class NotIrreducible(FermatError):
    pass


class RootOrderMismatch(FermatError):
    pass


class BadCharacteristic(FermatError):
    pass


class NotSupersingularPair(FermatError):
    pass


class ZeroElement(FermatError):
    pass


# combinatorics / line lattice
class ZeroCoordinate(FermatError):
    pass


class DegreeMismatch(FermatError):
    pass


class UnsupportedDegree(FermatError):
    pass


class NotDecomposableForFamily(FermatError):
    pass


# linear algebra
class NotSquare(FermatError):
    pass


class DimensionMismatch(FermatError):
    pass


class ZeroDiscriminant(FermatError):
    pass


# characteristic p
class SearchLimitExceeded(FermatError):
    pass


class NoPairFound(FermatError):
    pass


class ValidationFailed(FermatError):
    pass


class MissingRootOfUnity(FermatError):
    pass


class RootExtractionFailed(FermatError):
    pass


class CoincidentLine(FermatError):
    pass


# certification
class OracleMismatch(FermatError):
    pass


class RowNotFound(FermatError):
    pass
