class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class BudgetError(RuntimeError):
    """Requested computation exceeds the configured resource budget."""
