"""Exception types shared across the package."""


class QuasiconnError(Exception):
    """Base class for all package errors."""


class PreconditionError(QuasiconnError, ValueError):
    """An operation was called on inputs outside its domain."""

    def __init__(self, message: str, code: str = "PRECONDITION"):
        super().__init__(message)
        self.code = code


class GraphFormatError(QuasiconnError, ValueError):
    """A graph file could not be parsed."""

    def __init__(self, message: str, line: int | None = None, offset: int | None = None):
        where = ""
        if line is not None:
            where = f" (line {line})"
        elif offset is not None:
            where = f" (byte {offset})"
        super().__init__(message + where)
        self.line = line
        self.offset = offset


class TheoryViolation(QuasiconnError):
    """A guaranteed existence failed although every hypothesis was verified.

    Carries the evidence dict so callers can serialize it into a report.
    """

    def __init__(self, message: str, evidence: dict | None = None):
        super().__init__(message)
        self.evidence = evidence or {}
