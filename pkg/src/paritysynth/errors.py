"""Exception hierarchy shared by every module."""

from __future__ import annotations

__all__ = [
    "ParitySynthError",
    "SingularMatrix",
    "NonLinearGate",
    "UnsupportedGate",
    "ArityMismatch",
    "ArityTooLarge",
    "ZeroIndicator",
    "PreconditionViolated",
    "InfeasibleParity",
    "NoCommonTarget",
    "SearchExhausted",
    "MixedTargets",
    "TooManyQubits",
    "ParseError",
    "UndeclaredWire",
    "DuplicateParity",
    "ZeroParity",
]


class ParitySynthError(Exception):
    """Base class for all library errors."""


class SingularMatrix(ParitySynthError, ValueError):
    """A matrix that must be invertible is not."""


class NonLinearGate(ParitySynthError, ValueError):
    """A CNOT-only routine met some other gate."""


class UnsupportedGate(ParitySynthError, ValueError):
    """A gate kind is outside what the routine accepts."""


class ArityMismatch(ParitySynthError, ValueError):
    """Operands have different lengths or wire counts."""


class ArityTooLarge(ParitySynthError, ValueError):
    """An exhaustive routine was asked for too many variables."""


class ZeroIndicator(ParitySynthError, ValueError):
    """The zero parity indicator was given where a nonzero one is required."""


class PreconditionViolated(ParitySynthError, ValueError):
    """An input violates a documented precondition."""


class InfeasibleParity(ParitySynthError, ValueError):
    """A parity is not reachable from the encoded wire states."""


class NoCommonTarget(ParitySynthError, ValueError):
    """No coordinate is set in every member of the parity set."""


class SearchExhausted(ParitySynthError, RuntimeError):
    """Exhaustive search found nothing within the length cap."""


class MixedTargets(ParitySynthError, ValueError):
    """A circuit expected to have a single CNOT target has several."""


class TooManyQubits(ParitySynthError, ValueError):
    """Dense simulation was requested beyond its qubit bound."""


class ParseError(ParitySynthError, ValueError):
    """Malformed text input.

    Attributes:
        line: 1-based line number of the offending line, or None.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UndeclaredWire(ParseError):
    """A gate references a wire missing from the `.v` header."""


class DuplicateParity(ParseError):
    """The same parity appears twice in a set or polynomial file."""


class ZeroParity(ParseError):
    """The all-zero parity appears in a set or polynomial file."""
