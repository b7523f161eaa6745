"""Exception hierarchy shared by every module."""


class EqDesignError(Exception):
    """Base class for all errors raised by this package."""


class InputError(EqDesignError):
    """Malformed user input (game documents, formulas, job files)."""


class GameSyntaxError(InputError):
    """A game document could not be parsed at all."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class GameSemanticError(InputError):
    """A game document parsed but violates an arena invariant."""


class FormulaSyntaxError(InputError):
    def __init__(self, message, position=None):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class UnknownPropositionError(InputError):
    pass


class ResourceLimitExceeded(EqDesignError):
    """A configured cap was hit; the question is left undecided."""
