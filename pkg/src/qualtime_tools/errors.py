from __future__ import annotations

import typing as t


class QualtimeError(Exception):
    """Base exception for all errors raised within the `qualtime-tools` package."""

    pass


class InvalidInstanceError(QualtimeError):
    """Base exception for all errors related to malformed instances or orders."""

    pass


class UnknownElement(InvalidInstanceError):
    """Error raised when an element or variable does not belong to the ground set."""

    pass


class CycleError(InvalidInstanceError):
    """Error raised when the closure of a relation is not antisymmetric.

    The offending cycle is available as the `cycle` attribute.
    """

    def __init__(self, msg: str, cycle: t.Sequence[t.Any] = ()) -> None:
        super().__init__(msg)
        self.cycle = tuple(cycle)


class SizeLimitExceeded(QualtimeError):
    """Error raised when an exhaustive procedure is asked to run above its configured cap.

    Caps are configuration (see `qualtime_tools.defaults`), raise them explicitly
    when a larger exhaustive run is really wanted.
    """

    pass


class ParseError(QualtimeError):
    """Error raised when an instance file does not follow its declared format.

    The 1-based line number is available as the `line` attribute (0 when the
    error is not attached to a single line).
    """

    def __init__(self, msg: str, line: int = 0) -> None:
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


class EmptyConstraint(QualtimeError):
    """Error raised when duplicate constraint lines intersect to an empty relation set.

    The instance is still well formed, it is simply unsatisfiable. It is available
    as the `instance` attribute so that callers can report it as such.
    """

    def __init__(self, msg: str, instance: t.Any = None, line: int = 0) -> None:
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.instance = instance
        self.line = line


class VerificationMismatch(QualtimeError):
    """Error raised when a solver and its brute-force oracle disagree.

    This is a correctness alarm: it should never be raised on a released build.
    """

    pass
