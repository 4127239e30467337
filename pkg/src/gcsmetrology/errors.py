"""Exception hierarchy shared by all modules."""


class MetrologyError(Exception):
    """Base class for every error raised by the package."""


class InvalidParams(MetrologyError, ValueError):
    """Deformation parameters violate one or more admissibility constraints."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid deformation parameters: " + "; ".join(self.violations))


class NonPositiveLadder(MetrologyError, ValueError):
    def __init__(self, m, value):
        self.m = m
        self.value = value
        super().__init__(f"ladder coefficient squared at m={m} is not positive ({value!r})")


class NotConverged(MetrologyError, RuntimeError):
    """Coherent-state series did not reach the tail tolerance within max_cutoff."""


class DegenerateInput(MetrologyError, ValueError):
    """A Fisher-information quantity is undefined for the given input."""


class InvalidEfficiency(MetrologyError, ValueError):
    pass


class Undefined(MetrologyError, ValueError):
    """A ratio is requested where one side is infinite."""


class CutoffTooSmall(MetrologyError, ValueError):
    pass


class NoFiniteValue(MetrologyError, RuntimeError):
    """Every grid point of an optimisation returned an infinite sensitivity."""


class NonHermitian(MetrologyError, ValueError):
    pass


class ConfigError(MetrologyError, ValueError):
    """Malformed run configuration (JSON document or command-line flags)."""
