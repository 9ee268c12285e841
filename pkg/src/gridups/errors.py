"""Exception types shared across the package."""


class GridUpsError(Exception):
    """Base class for all package-specific errors."""


class InvalidModelError(GridUpsError, ValueError):
    """State-space matrices are dimensionally inconsistent or empty."""


class PoleEvaluationError(GridUpsError, ZeroDivisionError):
    """A transfer function was evaluated at (or too close to) a pole."""


class ConfigError(GridUpsError, ValueError):
    """Scenario/config document failed to parse or validate."""


class SimulationError(GridUpsError, RuntimeError):
    """The switched-network solver failed (e.g. no consistent diode state)."""


class AnalysisError(GridUpsError, ValueError):
    """Waveform analysis preconditions violated (missing signal, zero
    fundamental, zero apparent power, non-integer period window)."""
