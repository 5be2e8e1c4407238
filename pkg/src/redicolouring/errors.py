"""Exception types shared across the package."""


class RedicolouringError(Exception):
    """Base class for all package-specific errors."""


class PreconditionError(RedicolouringError):
    """An operation was called on inputs that violate its stated preconditions."""


class CapExceededError(RedicolouringError):
    """A brute-force or enumeration step would exceed its configured cap."""


class InvalidMoveError(RedicolouringError):
    """A recolouring move creates a monochromatic directed cycle.

    Carries the step index and the offending cycle.
    """

    def __init__(self, step, cycle, message=None):
        self.step = step
        self.cycle = cycle
        super().__init__(message or f"move {step} creates a monochromatic cycle {cycle}")


class NoChangeMoveError(RedicolouringError):
    """A recolouring move does not change the colour of its vertex."""

    def __init__(self, step, message=None):
        self.step = step
        super().__init__(message or f"move {step} does not change any colour")


class InternalInvariantError(RedicolouringError):
    """An internal assertion of a constructive procedure failed.

    This signals an implementation bug (or an undetected precondition
    violation), never silently repaired.  The message carries the step and
    enough state to reproduce.
    """


class StrategyError(RedicolouringError):
    """A pluggable sub-strategy failed (unreachable target, pass limit, ...)."""
