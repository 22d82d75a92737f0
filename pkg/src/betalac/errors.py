"""Exception taxonomy.

Class names follow the error vocabulary of the public contracts; everything
derives from :class:`BetalacError` so callers can catch broadly.
"""


class BetalacError(Exception):
    """Base class for all library errors."""


class NotMonic(BetalacError):
    """The polynomial's leading coefficient is not 1."""


class Reducible(BetalacError):
    """The polynomial factors over the rationals."""


class NoRootAboveOne(BetalacError):
    """The polynomial has no real root greater than 1."""


class ClassificationError(BetalacError):
    """The polynomial defines neither a Pisot nor a Salem number."""


class BaseMismatch(BetalacError):
    """Operands belong to different algebraic bases."""


class PrecisionBudgetExceeded(BetalacError):
    """Refinement hit the configured bit budget before deciding."""


class FloorTieUnresolvable(BetalacError):
    """A floor could not be separated from an integer within budget."""


class HorizonExceeded(BetalacError):
    """A query asked beyond the horizon a support set was built for."""


class EmptyBelowR(BetalacError):
    """No element of the set lies strictly below the query point."""


class HorizonInsufficient(BetalacError):
    """The available support horizon cannot certify the requested width."""

    def __init__(self, message: str, needed: int | None = None):
        super().__init__(message)
        self.needed = needed


class InsufficientDigits(BetalacError):
    """The digit stream is shorter than the requested count."""


class OutOfUnitInterval(BetalacError):
    """The expansion argument does not lie in [0, 1)."""


class DomainError(BetalacError):
    """Argument outside the mathematical domain of the operation."""


class TieUndecidable(BetalacError):
    """The comparison sits exactly on the decision boundary."""


class DegenerateSamples(BetalacError):
    """Too few or unusable samples for a fit."""


class GridTooSmall(BetalacError):
    """The evaluation grid cannot support the requested diagnostic."""


class NoClosedFormInverse(BetalacError):
    """The sequence kind has no real-valued inverse to evaluate."""
