"""Exception types shared across the package."""


class CyclologError(Exception):
    """Base class for all domain errors raised by this package."""


class ContextMismatch(CyclologError):
    """Operands belong to different (p, precision) contexts."""


class DigitStringError(CyclologError, ValueError):
    """A digit string is malformed or contains digits outside [0, p)."""


class NotAUnit(CyclologError):
    """Inversion requested for an element with positive valuation."""


class NotDivisible(CyclologError):
    """Exact division by a power of the uniformizer is not possible."""


class NotPrincipalUnit(CyclologError):
    """Logarithm input must have constant digit equal to 1."""


class ValuationTooSmall(CyclologError):
    """Exponential input must lie in the square of the maximal ideal."""


class BranchZero(CyclologError):
    """Preimage branches are indexed by a nonzero leading digit."""


class NotInMSquared(CyclologError):
    """Preimage targets must have digits 0 and 1 equal to zero."""


class CapExceeded(CyclologError):
    """An exhaustive enumeration would exceed the configured cap."""

    def __init__(self, required: int, cap: int):
        super().__init__(f"enumeration of {required} elements exceeds cap {cap}")
        self.required = required
        self.cap = cap
