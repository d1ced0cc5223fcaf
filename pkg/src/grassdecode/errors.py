"""Exception types shared by the library, the service and the CLI."""


class GrassDecodeError(Exception):
    """Base class for all library errors."""


class InvalidInputError(GrassDecodeError, ValueError):
    """Malformed or mathematically inadmissible input (CLI exit code 2)."""


class FieldMismatchError(InvalidInputError):
    """Elements or matrices from two different fields were combined."""


class BudgetExceededError(GrassDecodeError):
    """An enumeration would exceed its configured size budget (CLI exit code 3)."""

    def __init__(self, what: str, size: int, budget: int):
        self.what = what
        self.size = size
        self.budget = budget
        super().__init__(f"{what}: size {size} exceeds budget {budget}")
