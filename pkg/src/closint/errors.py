"""Exception hierarchy.  Each class maps to one CLI exit code."""


class ClosintError(Exception):
    exit_code = 1


class UsageError(ClosintError, ValueError):
    """Bad arguments, mismatched ambients, malformed input."""

    exit_code = 1


class DomainError(UsageError):
    """Input outside an operation's mathematical domain."""


class ConstructionError(ClosintError):
    """An object failed its construction-time verification."""

    exit_code = 1


class ParseError(UsageError):
    """Positioned syntax error in an expression or ring-spec file."""

    def __init__(self, message: str, line: int = 1, column: int = 1, text: str | None = None):
        self.line, self.column, self.text = line, column, text
        super().__init__(f"line {line}, column {column}: {message}")


class InconclusiveError(ClosintError):
    """A stabilizing computation did not stabilize within its bounds."""

    exit_code = 2

    def __init__(self, message: str, partials=None):
        super().__init__(message)
        self.partials = partials or []


class CapabilityError(ClosintError):
    """The requested strategy does not support this ring family."""

    exit_code = 3


class ResourceError(ClosintError):
    """A configured size cap was exceeded."""

    exit_code = 4


class CrossCheckError(ClosintError):
    """Two independent computations disagreed."""

    exit_code = 5

    def __init__(self, message: str, diff=None):
        super().__init__(message)
        self.diff = diff
