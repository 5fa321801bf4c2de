"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class AtomSpecError(Exception):
    """Base class for every error raised by atomspec."""


class ParseError(AtomSpecError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(f"{where}{message}")
        self.message = message


class CompositionError(AtomSpecError, ValueError):
    """Two paths were multiplied whose endpoints do not match."""


class UsageError(AtomSpecError, ValueError):
    """An operation was called outside its precondition."""


class NonAdmissibleRelationError(UsageError):
    """A relation carries a nonzero coefficient on some trivial path."""

    def __init__(self, relation, source=None):
        self.relation = relation
        self.source = source
        text = source.text if source is not None else str(relation)
        where = f" at line {source.line}, col {source.col}" if source is not None else ""
        super().__init__(
            f"relation {text!r}{where} is not admissible: "
            f"nonzero coefficient on a trivial path ({relation})"
        )


class CapabilityError(AtomSpecError):
    """The requested (ring, generator shape) combination is not supported."""


class ResourceError(AtomSpecError):
    """An enumeration guard was exceeded; carries the offending count."""

    def __init__(self, what: str, count: int, limit: int):
        self.count = count
        self.limit = limit
        super().__init__(f"{what}: {count} exceeds the configured limit {limit}")
