"""Exception types shared across the package."""


class RamsimpleError(Exception):
    """Base class for package errors."""


class GraphFormatError(RamsimpleError):
    """Malformed graph/colouring input (file parsing, bad headers)."""


class BudgetExceededError(RamsimpleError):
    """A search or enumeration hit its configured budget.

    Deliberately distinct from a negative answer: "unknown" is never
    reported as "false".  Carries whatever progress counters were
    available when the budget tripped.
    """

    def __init__(self, message: str, nodes: int | None = None, millis: float | None = None):
        super().__init__(message)
        self.nodes = nodes
        self.millis = millis
