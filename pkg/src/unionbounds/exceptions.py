"""Exception hierarchy shared by the library and the CLI."""


class UnionBoundsError(ValueError):
    """Base class for all errors raised by this package."""


class FormatError(UnionBoundsError):
    """Input document could not be parsed (bad JSON, unknown or missing fields)."""


class InvalidSystemError(UnionBoundsError):
    """A probability system violates its invariants."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems) or "invalid system")


class InvalidSummaryError(UnionBoundsError):
    """Moment summary is inconsistent (e.g. gamma outside [alpha, N*alpha])."""


class InfeasibleSummaryError(UnionBoundsError):
    """Summary is well formed but no event family realizes it."""


class ConstructionError(UnionBoundsError):
    """Degree decomposition does not satisfy the witness construction preconditions."""
