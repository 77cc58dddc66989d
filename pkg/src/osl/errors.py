"""Exception hierarchy shared by every osl module."""


class OSLError(Exception):
    """Base class for all errors raised by osl."""


class StructureError(OSLError, ValueError):
    """Malformed structural input: out-of-range states, dimension mismatch,
    a relation that is not symmetric, a flat that is not in the family."""


class ResourceError(OSLError):
    """A configured cap was exceeded. Never silently turned into an answer."""

    def __init__(self, message, count=None, cap=None):
        super().__init__(message)
        self.count = count
        self.cap = cap


class ParseError(OSLError, ValueError):
    def __init__(self, message, text=None, pos=None):
        if pos is not None:
            message = f"{message} (at column {pos + 1})"
        super().__init__(message)
        self.text = text
        self.pos = pos


class EvaluationError(OSLError, KeyError):
    def __init__(self, atom):
        super().__init__(atom)
        self.atom = atom

    def __str__(self):
        return f"atom {self.atom!r} has no assigned flat"
