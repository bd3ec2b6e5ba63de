"""Exception hierarchy shared by all subpackages."""


class SchurLikeError(Exception):
    """Base class for every error raised by this package."""


class RingMismatchError(SchurLikeError, TypeError):
    pass


class UnsupportedRingError(SchurLikeError, TypeError):
    pass


class ShapeError(SchurLikeError, ValueError):
    pass


class InvalidAnnihilatorError(SchurLikeError, ValueError):
    pass


class NotAnnihilatingError(SchurLikeError, ValueError):
    pass


class NotPseudoInverseError(SchurLikeError, ValueError):
    """``P A = A P = a I`` does not hold."""


class IdentityViolation(SchurLikeError, AssertionError):
    """A determinant or block identity that must hold was found to fail."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class PreconditionError(SchurLikeError, ValueError):
    pass


class QuotientPreconditionError(PreconditionError):
    pass


class UndefinedPredicateError(SchurLikeError, ValueError):
    pass


class PoleError(SchurLikeError, ValueError):
    """Evaluation point hits a pole of a rational function."""


class LiftingUndefinedError(SchurLikeError, ValueError):
    pass


class SolverError(SchurLikeError, RuntimeError):
    """Eigensolver did not converge; ``partial`` holds the eigenvalues found."""

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)


class DegeneratePencilError(SchurLikeError, ValueError):
    pass


class MultisetMismatchError(SchurLikeError, ValueError):
    pass


class ParseError(SchurLikeError, ValueError):
    pass
