"""Exception types raised across the package."""


class ZeemanQOError(Exception):
    """Base class for all errors raised by zeeman_qo."""


class DomainError(ZeemanQOError, ValueError):
    """An input lies outside the domain an operation accepts."""


class StiffnessError(ZeemanQOError):
    """The adaptive integrator could not make progress (step-size underflow)."""


class PositivityError(ZeemanQOError):
    """An evolved density matrix acquired a significantly negative eigenvalue."""


class InitialConditionRequired(ZeemanQOError):
    """The stationary state is not unique, so an initial state must be given."""


class ConvergenceTimeout(ZeemanQOError):
    """Long-time evolution did not meet its stopping criterion in time."""


class ConsistencyError(ZeemanQOError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class ConfigError(ZeemanQOError):
    """Malformed or invalid run configuration."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
