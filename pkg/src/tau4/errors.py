"""Exception types shared across the package."""

from __future__ import annotations


class Tau4Error(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(Tau4Error, ValueError):
    """Operands have incompatible shapes."""


class BoundExceededError(Tau4Error):
    """An enumeration or recursion would exceed its configured size bound."""

    def __init__(self, what: str, size: int, bound: int):
        self.what = what
        self.size = size
        self.bound = bound
        super().__init__(f"{what}: size {size} exceeds bound {bound}")


class NotTotallyProperError(Tau4Error, ValueError):
    """A link (or model) has a pair of components with odd linking number."""

    def __init__(self, i: int, j: int, lk: int):
        self.pair = (i, j)
        self.lk = lk
        super().__init__(
            f"components {i} and {j} have odd linking number {lk}; "
            "link is not totally proper"
        )


class NotCharacteristicError(Tau4Error, ValueError):
    """A sublink is not characteristic for the linking matrix."""


class NotStablyDiagonalizableError(Tau4Error, ArithmeticError):
    """No congruence with +-1 stabilizations reaches a diagonal matrix.

    Either a local obstruction was found (the discriminant form is not
    realized by any diagonal matrix) or the bounded search gave up.
    """


class InconsistentDataError(Tau4Error, ValueError):
    """Input invariant data violates a required congruence."""


class ValidationError(Tau4Error, ValueError):
    """Input data fails a structural check; carries a code and a field path."""

    def __init__(self, code: str, field: str, message: str, line: int | None = None):
        self.code = code
        self.field = field
        self.line = line
        where = f"{field}" if line is None else f"{field} (line {line})"
        super().__init__(f"[{code}] {where}: {message}")
