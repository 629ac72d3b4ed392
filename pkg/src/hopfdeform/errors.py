"""Exception types shared across the package.

Guard errors (resource limits hit before any wrong answer can be produced)
are kept in a common hierarchy so the CLI can map them to a dedicated
exit code.
"""


class GuardExceeded(Exception):
    """A configured resource bound was exceeded; the computation was refused."""


class RankGuardError(GuardExceeded):
    pass


class SizeGuardError(GuardExceeded):
    pass


class DegreeOverflowError(GuardExceeded):
    pass


class UnsupportedParametersError(ValueError):
    pass


class NonUnitError(ArithmeticError):
    pass


class PrimeMismatchError(ValueError):
    pass


class ContextMismatchError(ValueError):
    """Operands belong to different rings."""


class ParentMismatchError(ValueError):
    """Operands belong to different algebras."""


class DimensionMismatchError(ValueError):
    pass


class NotInvertibleError(ValueError):
    pass


class RelationViolationError(ValueError):
    """A proposed homomorphism does not preserve a defining relation."""


class InadmissiblePresentationError(ValueError):
    """Rewrite rules whose reduction is not guaranteed to terminate."""


class NotAHopfIdealError(ValueError):
    pass


class NotFreeQuotientError(ValueError):
    pass


class NotAFieldError(TypeError):
    pass


class NotCommutativeError(ValueError):
    pass


class NotCocommutativeError(ValueError):
    pass


class TruncationError(IndexError):
    """A series was read beyond its computed truncation degree."""
