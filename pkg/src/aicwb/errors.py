"""Exception hierarchy shared by every layer of the workbench."""


class AicwbError(Exception):
    """Base class for all workbench errors."""


class DomainMismatchError(AicwbError, TypeError):
    """Operands live over different coefficient domains."""


class UnsupportedError(AicwbError):
    """The input is outside the supported class of presentations or operations."""


class DegenerateInputError(AicwbError, ValueError):
    """The input is well formed but degenerate (degree 0, missing variable, ...)."""


class BudgetExceeded(AicwbError):
    """A tower dimension or branch-count cap was hit."""


class PreconditionError(AicwbError, ValueError):
    """An operation was called with arguments violating its precondition."""


class RegularityError(PreconditionError):
    """A localization denominator is a zero divisor."""


class SpecializationError(AicwbError):
    """An element cannot be pushed through a residue map (denominator vanishes)."""


class MatchingError(AicwbError):
    """Component root multisets disagree under the residue maps."""


class ParseError(AicwbError, ValueError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class EvaluationError(AicwbError):
    """A formula could not be evaluated (e.g. an unbound free variable)."""
