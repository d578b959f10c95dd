"""Exception hierarchy shared by all espo modules.

The CLI maps these onto exit codes: ValidationError -> 2, BudgetError -> 3.
"""


class EspoError(Exception):
    """Base class for all espo errors."""


class ValidationError(EspoError):
    """Malformed or inconsistent input (shape mismatch, off-curve point, ...)."""


class DimensionError(ValidationError):
    """Length/arity mismatch between a value and the space it should live in."""


class EncodingError(ValidationError):
    """A rational does not factor over the configured prime basis."""


class GenericityError(ValidationError):
    """A surrogate-genericity precondition failed (singular exponent matrix)."""


class StrategyError(ValidationError):
    """The requested counting strategy does not apply to the given constraints."""


class InsufficientDataError(ValidationError):
    """Not enough samples/points for the requested computation."""


class BudgetError(EspoError):
    """An exhaustive enumeration would exceed the configured budget cap."""
