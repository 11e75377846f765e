"""
Exception hierarchy for the black-box checker.

Library code raises these; only the command-line front end turns them into
exit codes.
"""

from typing import Optional


class CheckerError(Exception):
    """Base class for every error raised by the checker."""


class ParseError(CheckerError):
    """Malformed formula or input file."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(f"{location}{message}")


class ValidationError(CheckerError):
    """Well-formed input that violates a cross-reference or structural rule."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.message = message
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class DeterminismError(ValidationError):
    """A component file defines two transitions for one (state, input) pair."""


class DeterminismViolation(CheckerError):
    """A replayed prefix produced outputs that differ from an earlier observation."""


class AlphabetViolation(CheckerError):
    """A symbol outside the component input alphabet was sent."""


class AlphabetMismatch(CheckerError):
    """System, component and tableau alphabets do not agree."""


class AdapterFailure(CheckerError):
    """The external component timed out, replied with garbage or exited."""


class UnknownState(CheckerError):
    """A query names a state the host system does not declare."""


class ExperimentLengthExceeded(CheckerError):
    """An experiment exceeded the configured input length guard."""


class SessionError(CheckerError):
    """A step was requested before any experiment established a prefix."""
