"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations

from typing import Any


class SepLearnError(Exception):
    """Base class for all errors raised by seplearn."""


class InvalidVertex(SepLearnError, ValueError):
    pass


class InvalidGraph(SepLearnError, ValueError):
    pass


class InvalidTest(SepLearnError, ValueError):
    """A query triple (S, u, v) that is not well formed."""


class InvalidParams(SepLearnError, ValueError):
    pass


class InvalidDecomposition(SepLearnError, ValueError):
    pass


class InvalidRegion(SepLearnError, ValueError):
    """Cut-search region violates its structural preconditions."""


class InstanceTooLarge(SepLearnError):
    pass


class IncompleteComponents(SepLearnError):
    pass


class RegionBoundViolated(SepLearnError):
    """A component admitted no cut within the proven size bound."""


class BudgetExceeded(SepLearnError):
    """Raised before evaluating a query that would break the oracle budget.

    ``kind`` is ``"size"`` or ``"count"``. Learners attach whatever they had
    learned so far as ``partial`` before re-raising.
    """

    def __init__(self, kind: str, limit: int, value: int) -> None:
        super().__init__(f"budget exceeded ({kind}): {value} > {limit}")
        self.kind = kind
        self.limit = limit
        self.value = value
        self.partial: Any = None


class ParseError(SepLearnError, ValueError):
    def __init__(self, kind: str, line: int | None, detail: str = "") -> None:
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"{kind}{where}{': ' + detail if detail else ''}")
        self.kind = kind
        self.line = line
