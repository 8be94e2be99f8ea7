"""Exception types shared across the package."""


class DomainError(ValueError):
    """An operation was called outside its mathematical domain."""


class ParseError(ValueError):
    """Syntax error in a system definition file."""

    def __init__(self, message, line=None, column=None, expected=None):
        self.line = line
        self.column = column
        self.expected = expected
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", column {column}" if column is not None else "")
        hint = f" (expected {expected})" if expected else ""
        super().__init__(f"{message}{loc}{hint}")


class AngularStallError(RuntimeError):
    """The angular velocity changed sign or vanished along a return-map orbit."""


class EscapeError(RuntimeError):
    """A return-map orbit left the trusted annulus around the start radius."""
