"""Exception types raised across the toolkit."""


class TilepotError(Exception):
    """Base class for every error the toolkit raises on purpose."""


class PotSyntaxError(TilepotError, ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ClosureError(TilepotError, ValueError):
    """A cohesive end occurs in the pot but its complement never does."""

    def __init__(self, symbol, missing):
        super().__init__(f"symbol {symbol!r}: no tile carries {missing!r}")
        self.symbol = symbol
        self.missing = missing


class DegenerateInputError(TilepotError, ValueError):
    pass


class MalformedDesignError(TilepotError, ValueError):
    pass


class InvalidDesignError(TilepotError, ValueError):
    pass


class DegreesOfFreedomError(TilepotError):
    """Raised when a spectrum has 3+ free variables and no fallback was asked for."""

    def __init__(self, free_count):
        super().__init__(
            f"degrees of freedom >= 3 (found {free_count}); "
            "enable the bounded enumeration fallback to continue"
        )
        self.free_count = free_count


class BudgetExhausted(TilepotError):
    """An exponential search ran out of nodes before reaching an answer.

    This is never a negative answer. ``partial`` carries whatever the
    search had produced so far and ``explored`` describes the part of
    the space that was finished.
    """

    def __init__(self, message, nodes, partial=None, explored=None):
        super().__init__(message)
        self.nodes = nodes
        self.partial = partial if partial is not None else []
        self.explored = explored if explored is not None else []
