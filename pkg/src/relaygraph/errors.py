"""Exception types shared across the package."""


class GraphError(ValueError):
    """Malformed graph input or an invalid vertex reference."""


class PreconditionError(GraphError):
    """A finder was called on an input that violates its hypotheses."""


class BudgetExceeded(RuntimeError):
    """An exhaustive search hit its state budget before finishing.

    This is an inconclusive outcome, never a negative answer.
    """

    def __init__(self, budget: int, what: str = "search"):
        self.budget = budget
        super().__init__(f"{what} exceeded its budget of {budget} states; result inconclusive")
