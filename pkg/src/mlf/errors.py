"""Exception taxonomy shared by every module in the package."""


class MlfError(Exception):
    """Base class so callers can catch everything from this package at once."""


class DomainError(MlfError):
    """Input outside the mathematical domain of the requested operation."""


class PreconditionViolation(MlfError):
    """Arguments violate a documented precondition of a specific routine."""


class NonConvergence(MlfError):
    """Iteration or series budget exhausted before reaching the tolerance."""


class CancellationLoss(MlfError):
    """Floating-point cancellation destroyed the requested accuracy."""


class RayProximity(MlfError):
    """Argument too close to a ray where the representation degenerates."""


class PoleError(MlfError):
    """Evaluation requested exactly at a pole."""


class SeriesDivergence(MlfError):
    """Series representation is invalid or numerically unusable at this point."""


class NearZeroDenominator(MlfError):
    """A denominator is too close to zero for the quotient to be trusted."""


class UnknownIdentity(MlfError):
    """Requested identity id is not in the catalog."""
