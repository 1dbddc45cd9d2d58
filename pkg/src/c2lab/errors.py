"""Exception types shared across the package."""


class C2LabError(Exception):
    """Base class for all package errors."""


class GraphParseError(C2LabError):
    """Malformed graph input (graph6 or JSON edge list)."""


class InputError(C2LabError):
    """Precondition violation on user-supplied arguments."""


class BudgetExceededError(C2LabError):
    """An enumeration or evaluation would exceed the configured budget."""

    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(
            f"operation needs {required} steps, budget is {budget}; "
            f"raise the budget to proceed"
        )


class InternalInconsistencyError(C2LabError):
    """A proven identity failed at runtime; signals an implementation bug."""


class StructuralAssumptionError(C2LabError):
    """Input did not come from a legal tree/2-forest edge bipartition."""
