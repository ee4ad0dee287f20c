"""Exception types shared across the package."""

from __future__ import annotations


class ZerolabError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatchError(ZerolabError):
    """Operands belong to different rings or have incompatible arity."""


class NotAFieldError(ZerolabError):
    """An operation that needs a field was given a ring with non-units."""


class SpaceDefinitionError(ZerolabError):
    """A sample-space basis violates its construction rules."""


class SpaceRequirementError(ZerolabError):
    """A structural precondition on the sample space does not hold."""


class BudgetExceededError(ZerolabError):
    """Estimated enumeration work exceeds the allowed budget.

    Carries the estimate so callers can tell how far over they are.
    """

    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        self.required = required
        self.budget = budget
        self.what = what
        super().__init__(
            f"{what} needs ~{required} operations but the budget is {budget}; "
            f"shrink the parameters or raise the budget"
        )


class ParseError(ZerolabError):
    """A ring/space/polynomial spec string failed to parse.

    Reports the offending position and what was expected there.
    """

    def __init__(self, text: str, pos: int, expected: str):
        self.text = text
        self.pos = pos
        self.expected = expected
        super().__init__(f"at position {pos} in {text!r}: expected {expected}")
