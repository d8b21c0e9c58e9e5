"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class BlockMonoidError(Exception):
    """Base class for all errors raised by blockmonoid."""


class GroupMismatchError(BlockMonoidError, ValueError):
    """Two operands live in different ambient groups."""


class NotContainedError(BlockMonoidError, ValueError):
    """A subgroup is not contained in the claimed ambient subgroup."""


class ResourceLimitExceeded(BlockMonoidError):
    """A search exhausted its node budget before finishing.

    Never swallowed internally: a partial answer is never returned.
    """

    def __init__(self, message: str, expanded: int | None = None):
        super().__init__(message)
        self.expanded = expanded


class NotZeroSumError(BlockMonoidError, ValueError):
    pass


class UndefinedExponentError(BlockMonoidError, ValueError):
    """The element occurs in no atom, so its exponent is undefined."""


class NotCondensedError(BlockMonoidError, ValueError):
    pass


class RefinementCapExceeded(BlockMonoidError):
    """The refinement iteration hit ``max_steps`` without reaching a divisor theory."""

    def __init__(self, message: str, diagnostics: list | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


class ShapeViolation(BlockMonoidError, ValueError):
    pass


class PreconditionError(BlockMonoidError, ValueError):
    pass
