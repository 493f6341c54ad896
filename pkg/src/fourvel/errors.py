"""Error types shared across the toolkit."""


class FourvelError(Exception):
    """Base class for all toolkit errors."""


class ParameterError(FourvelError, ValueError):
    """Invalid physical or numerical parameter."""


class InvalidBoostError(FourvelError, ValueError):
    """Boost speed at or above c."""


class SingularPointError(FourvelError, ValueError):
    """Evaluation requested at a singular locus of a field (e.g. Coulomb r=0)."""


class NearZeroWavefunctionError(FourvelError, ValueError):
    """|psi| below the configured threshold where a division by psi is needed.

    Carries the offending event so sweeps can report which sample failed.
    """

    def __init__(self, event, magnitude: float, threshold: float):
        self.event = event
        self.magnitude = magnitude
        self.threshold = threshold
        super().__init__(
            f"|psi| = {magnitude:.3e} <= threshold {threshold:.3e} at {event}"
        )


class InsufficientComponentsError(FourvelError, ValueError):
    """Fewer than two spinor components admissible for velocity comparison."""


class UnsupportedConfigurationError(FourvelError, ValueError):
    """Operation outside its supported configuration (e.g. needs A = 0)."""


class DegenerateParameterError(FourvelError, ValueError):
    """Worldline tangent vanishes (cusp); speed classification undefined."""


class QuadratureError(FourvelError, RuntimeError):
    """Adaptive quadrature failed to converge within the depth limit."""


class ConfigError(FourvelError, ValueError):
    """Malformed or inconsistent scenario configuration."""
