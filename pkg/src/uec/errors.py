"""Exception hierarchy shared across the package."""


class UecError(Exception):
    """Base class for all errors raised by this package."""


class InputError(UecError):
    """Malformed input: bad node ids, absent edges, mismatched node counts."""


class GraphParseError(InputError):
    """A graph document failed to parse; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidCpdagError(InputError):
    """A chain graph violates one of the essential-graph invariants."""


class PreconditionError(UecError):
    """Operation called outside its contract (e.g. graphs not equivalent)."""


class BudgetError(UecError):
    """An exact but exponential procedure was asked to exceed its size budget."""


class VerificationError(UecError):
    """An internal cross-check failed; indicates a bug, not a user error."""


class IllegalMoveError(VerificationError):
    """Replaying an edge move violated the legality lemma it relies on."""
