"""Exception types shared across the package."""


class CalcError(Exception):
    """Base class for everything this package raises on purpose."""

    def __init__(self, message, reasons=None):
        super().__init__(message)
        # machine-readable reason list, surfaced by the CLI under --json
        self.reasons = tuple(reasons) if reasons is not None else (str(message),)


class InputError(CalcError):
    """Invalid caller-supplied data: presets, ladders, classes, expressions."""


class InternalError(CalcError):
    """An internal invariant failed. Indicates a bug, never bad input."""
