"""Exception hierarchy shared by the library and the command line."""


class DomainError(ValueError):
    """An operation was called outside its domain (unknown argument, bad subset...)."""


class InvariantError(DomainError):
    """A structure violates one of its construction invariants."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ResourceError(RuntimeError):
    """A configured size bound was exceeded."""


class EngineDisagreement(AssertionError):
    """The direct and DL-PA engines returned different answers."""


class ParseError(ValueError):
    """Malformed surface syntax.

    ``span`` is a SourceSpan, ``expected`` a non-empty list of token
    descriptions and ``found`` the offending token text ("" at end of input).
    """

    def __init__(self, span, expected, found):
        self.span = span
        self.expected = list(expected) or ["<token>"]
        self.found = found
        what = repr(found) if found else "end of input"
        super().__init__(
            f"line {span.line}, column {span.column}: expected "
            f"{' or '.join(self.expected)}, found {what}"
        )
