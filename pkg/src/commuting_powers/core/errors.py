"""Exception hierarchy. Everything raised on purpose derives from CommutingPowersError."""
from __future__ import annotations

from typing import Optional, Tuple


class CommutingPowersError(ValueError):
    pass


# Cayley tables


class InvalidTable(CommutingPowersError):
    """Table is not square or holds an entry outside [0, n)."""

    def __init__(self, message: str, cell: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.cell = cell


class NotLatinSquare(InvalidTable):
    pass


class NoIdentity(InvalidTable):
    pass


class NoInverse(InvalidTable):
    pass


class NotAssociative(InvalidTable):
    def __init__(self, message: str, triple: Tuple[int, int, int]):
        super().__init__(message)
        self.triple = triple


class CayleyFileError(CommutingPowersError):
    pass


# Caps and budgets


class ClosureBudgetExceeded(CommutingPowersError):
    pass


class OrderCapExceeded(CommutingPowersError):
    pass


class BudgetExceeded(CommutingPowersError):
    pass


# Group structure


class NotASubgroup(CommutingPowersError):
    pass


class PrimeDoesNotDivideOrder(CommutingPowersError):
    pass


class PreconditionFailed(CommutingPowersError):
    def __init__(self, message: str, which: str):
        super().__init__(message)
        self.which = which


# Arithmetic


class BothZero(CommutingPowersError):
    pass


class NotCoprime(CommutingPowersError):
    pass


# Laws


class LawSyntaxError(CommutingPowersError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class EmptyInput(LawSyntaxError):
    def __init__(self) -> None:
        super().__init__("empty law", 0)


class UnboundVariable(CommutingPowersError):
    def __init__(self, name: str):
        super().__init__(f"variable {name!r} has no assigned element")
        self.name = name


# Catalog


class BadSpec(CommutingPowersError):
    pass
