"""Exception types raised across the package."""


class HornConesError(ValueError):
    """Base class for every error raised by horncones."""


class NotNested(HornConesError):
    pass


class DimensionMismatch(HornConesError):
    pass


class BadRange(HornConesError):
    pass


class ZeroRelation(HornConesError):
    pass


class BlockMismatch(HornConesError):
    pass


class NotHermitian(HornConesError):
    pass


class NotConverged(HornConesError, ArithmeticError):
    pass


class UnsupportedCone(HornConesError):
    pass


class UnsupportedEmbedding(HornConesError):
    pass
