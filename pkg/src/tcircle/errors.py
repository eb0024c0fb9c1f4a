"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all toolkit-specific errors."""


class ParameterError(ToolkitError, ValueError):
    """An operation was called with out-of-contract arguments."""


class FormatError(ToolkitError, ValueError):
    """A text artifact (graph, drawing, or certificate file) is malformed."""


class SearchBudgetExceeded(ToolkitError):
    """An exhaustive search ran out of its time budget.

    This is deliberately distinct from any value result: callers must treat
    it as "unknown", never as "no" or as a number.  ``best`` carries the best
    incumbent found so far, if any.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class ConstructionError(ToolkitError):
    """A constructive generator failed its own consistency check.

    Raised instead of returning a silently wrong artifact.
    """
