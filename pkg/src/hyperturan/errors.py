"""Exception hierarchy shared by every module."""


class HypergraphError(Exception):
    """Base class for all errors raised by hyperturan."""


class ParameterError(HypergraphError, ValueError):
    """An argument is outside the range an operation accepts."""


class PreconditionError(HypergraphError, ValueError):
    """An input violates the hypothesis an algorithm relies on."""


class UnsupportedError(HypergraphError, ValueError):
    """No closed form or construction is available for the requested case."""


class HypothesisViolated(PreconditionError):
    """A structural hypothesis (such as an exact codegree) does not hold."""


class RepairFailed(HypergraphError, RuntimeError):
    """A repair step found no fresh vertex to use (expected on small hosts)."""


class SearchLimitExceeded(HypergraphError, RuntimeError):
    """A bounded search ran out of budget; the answer is unknown, not absent."""

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class FormatError(HypergraphError, ValueError):
    """Malformed .hg or witness JSON input.

    ``line`` is the 1-based line number for text formats and ``field`` the
    offending key for JSON documents; either may be None.
    """

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.line = line
        self.field = field
