"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class ParameterError(ValueError):
    """Invalid bound-parameter value or combination."""


class PrecisionError(ArithmeticError):
    """Requested relative-error target could not be certified."""


class ConvergenceError(ArithmeticError):
    """Iteration cap exceeded before meeting the convergence tolerance."""


class EngineRangeError(ValueError):
    """Query beyond the prime engine's built limit."""


class ResourceBudgetError(RuntimeError):
    """Refusing a build whose working set would exceed the memory budget."""
