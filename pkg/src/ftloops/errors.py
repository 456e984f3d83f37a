"""Exception hierarchy.

Every exception carries a ``code`` naming the error kind; the CLI prints
``error: <code>: <message>`` and maps the class family to an exit status.
"""

from __future__ import annotations

__all__ = [
    "FaultTreeError",
    "ModelError",
    "DuplicateId",
    "UnresolvedReference",
    "EmptyTops",
    "BadKooN",
    "BadProbability",
    "UnknownGate",
    "DslSyntaxError",
    "NonMonotoneTime",
    "AnalysisError",
    "RepairableUnsupported",
    "MissingProbability",
    "IllegalRepair",
    "UnknownBasic",
    "LimitExceeded",
    "CapExceeded",
    "TooManyLoopGates",
    "TooManyBasics",
    "TooLarge",
]


class FaultTreeError(Exception):
    """Base class for all library errors."""

    code = "FaultTreeError"

    def __init__(self, message: str = "", *, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}, col {col}: {message}"
        super().__init__(message)


class ModelError(FaultTreeError):
    code = "ModelError"


class DuplicateId(ModelError):
    code = "DuplicateId"


class UnresolvedReference(ModelError):
    code = "UnresolvedReference"


class EmptyTops(ModelError):
    code = "EmptyTops"


class BadKooN(ModelError):
    code = "BadKooN"


class BadProbability(ModelError):
    code = "BadProbability"


class UnknownGate(ModelError):
    """An analysis was asked about a gate the tree does not declare."""

    code = "UnknownGate"


class DslSyntaxError(FaultTreeError):
    code = "SyntaxError"


class NonMonotoneTime(FaultTreeError):
    code = "NonMonotoneTime"


class AnalysisError(FaultTreeError):
    code = "AnalysisError"


class RepairableUnsupported(AnalysisError):
    code = "RepairableUnsupported"

    def __init__(self, events):
        self.events = tuple(events)
        super().__init__(",".join(self.events))


class MissingProbability(AnalysisError):
    code = "MissingProbability"

    def __init__(self, events):
        self.events = tuple(events)
        super().__init__(",".join(self.events))


class IllegalRepair(AnalysisError):
    code = "IllegalRepair"


class UnknownBasic(AnalysisError):
    code = "UnknownBasic"


class LimitExceeded(FaultTreeError):
    """A configured size limit would be exceeded."""

    code = "LimitExceeded"


class CapExceeded(LimitExceeded):
    code = "CapExceeded"


class TooManyLoopGates(LimitExceeded):
    code = "TooManyLoopGates"


class TooManyBasics(LimitExceeded):
    code = "TooManyBasics"


class TooLarge(LimitExceeded):
    code = "TooLarge"
