"""Exception hierarchy and check results shared by all stabkit modules."""
from dataclasses import dataclass
from typing import Any, Optional


class StabkitError(Exception):
    """Base class for every error raised by stabkit."""


class InputError(StabkitError, ValueError):
    """Malformed document, dimension mismatch or out-of-range parameter."""


class BudgetExceededError(StabkitError):
    """An enumeration would exceed the configured budget."""

    def __init__(self, message: str, required: int = 0, budget: int = 0):
        super().__init__(message)
        self.required = required
        self.budget = budget


class MathCheckError(StabkitError):
    """A mathematical verification failed.

    Attributes:
        witness: Machine-checkable evidence (a class, vector, parameter or matrix)
    """

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class SignatureError(MathCheckError):
    """Quadratic form has the wrong signature."""


class NotNegativeDefiniteError(MathCheckError):
    """A quadratic form is not negative definite on a kernel."""


class HeartViolationError(MathCheckError):
    """A nonzero heart class maps outside the semi-closed upper half plane."""


class VanishingChargeError(HeartViolationError):
    """A nonzero heart class has central charge zero."""


class NotSemistableError(MathCheckError):
    """An object expected to be semistable has a destabilizing subobject."""


class NotInP0Error(MathCheckError):
    """A central charge fails the 2-CY membership test."""


class PathExitError(MathCheckError):
    """A deformation path leaves the set of charges with definite kernel."""

    def __init__(self, message: str, witness: Any = None, t: Any = None):
        super().__init__(message, witness)
        self.t = t


class InternalInvariantError(StabkitError, RuntimeError):
    """A property guaranteed by a proved lemma failed; indicates a bug."""


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a verification that reports instead of raising.

    Truthy iff the check passed; ``witness`` holds the violating datum otherwise.
    """

    passed: bool
    witness: Optional[Any] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed
