class TardisError(Exception):
    """Base class for every error raised by this package."""


class ParseError(TardisError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SizeLimitError(TardisError):
    """Input is too large for an exhaustive routine."""


class BudgetExceededError(TardisError):
    """Enumeration or DP state space exceeds the configured budget."""


class InfeasibleError(TardisError):
    """The requested object does not exist (e.g. no happy assignment)."""


class PreconditionError(TardisError):
    pass


class InfeasibleCandidatesError(PreconditionError):
    pass


class NotATardisError(PreconditionError):
    pass


class WrongShapeError(PreconditionError):
    pass


class InvalidInstanceError(PreconditionError):
    pass


class InvalidDecompositionError(PreconditionError):
    """A tree decomposition violates one of its defining conditions."""
