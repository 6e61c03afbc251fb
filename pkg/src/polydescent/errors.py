"""Exception hierarchy shared by every layer of the package."""


class DescentError(Exception):
    """Base class for all errors raised by polydescent."""


class UsageError(DescentError, ValueError):
    """Raised when an operation is called outside its contract."""


class ParseError(UsageError):
    """A problem-file or expression syntax error with a source location."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column
