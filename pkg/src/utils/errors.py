"""Exception hierarchy shared by the model, analysis, simulation and CLI layers.

Every error carries an ``exit_code`` so that ``main.py`` can map failures to
the stable scripting contract: 2 for configuration problems, 3 for numerical
failures.
"""

EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_FAILURE = 3


class GoodwinNetError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = EXIT_NUMERICAL_FAILURE


class ConfigError(GoodwinNetError, ValueError):
    """Invalid or incomplete run configuration."""

    exit_code = EXIT_CONFIG_ERROR


class InvalidParameterError(GoodwinNetError, ValueError):
    """A kinetic parameter is outside its admissible range."""

    exit_code = EXIT_CONFIG_ERROR


class InvalidTopologyError(GoodwinNetError, ValueError):
    """Coupling weights are not square, symmetric and nonnegative."""

    exit_code = EXIT_CONFIG_ERROR


class DomainError(GoodwinNetError, ValueError):
    """A function was evaluated outside its mathematical domain."""


class DimensionMismatchError(GoodwinNetError, ValueError):
    """State and topology disagree on the number of oscillators."""


class PreconditionError(GoodwinNetError):
    """An operation was called on inputs its theory does not cover."""


class DisconnectedTopologyError(PreconditionError):
    """The coupling graph is disconnected, so the algebraic connectivity is 0."""


class DivergenceError(GoodwinNetError):
    """The integrator produced a non-finite state.

    Attributes:
        time: Simulation time of the first non-finite sample.
        trajectory: Trajectory up to (and excluding) the offending step.
    """

    def __init__(self, message: str, time: float, trajectory=None):
        super().__init__(message)
        self.time = time
        self.trajectory = trajectory


class NotOscillatoryError(GoodwinNetError):
    """Too few cycles in the measurement window to estimate a period."""


class NoBalanceSolutionError(GoodwinNetError):
    """The harmonic-balance amplitude solve did not converge."""

    def __init__(self, message: str, residuals=None, iterations: int = 0):
        super().__init__(message)
        self.residuals = residuals
        self.iterations = iterations


class InvalidBundleError(GoodwinNetError, ValueError):
    """A serialized result bundle breaks its schema."""
