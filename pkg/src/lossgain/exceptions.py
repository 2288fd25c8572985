"""Exception and warning types raised across the package."""


class LossGainError(Exception):
    """Base class for all errors raised by lossgain."""


class ShapeMismatchError(LossGainError, ValueError):
    pass


class NotSymmetricError(LossGainError, ValueError):
    pass


class BadShapeError(LossGainError, ValueError):
    """A matrix or field map does not have the structure a builder requires."""


class SingularMatrixError(LossGainError, ValueError):
    """The kinetic matrix is singular (or has a vanishing eigenvalue)."""


class BoundarySingularError(SingularMatrixError):
    """Parameters sit on a region boundary such as B = +/- Delta."""


class GammaZeroUndefinedError(LossGainError, ValueError):
    """The Landau diagonalizer is undefined for gamma = 0 with C != 0."""


class RegionMismatchError(LossGainError, ValueError):
    pass


class NonFiniteError(LossGainError, ArithmeticError):
    """Integration produced inf/nan (e.g. runaway growth)."""


class DegreeOverflowError(LossGainError, ValueError):
    """Result of an operator product would exceed degree two."""


class NotHermitianError(LossGainError, ValueError):
    pass


class GridTooCoarseError(LossGainError, ValueError):
    pass


class ConfigError(LossGainError, ValueError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if field is not None:
            where.append(f"field {field!r}")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class TruncationWarning(UserWarning):
    """Requested levels lie outside the trusted window of a truncated basis."""
