"""Exception types raised across the package."""


class SteinLabError(ValueError):
    """Base class for all domain errors."""


class NotHermitianError(SteinLabError):
    pass


class DimensionError(SteinLabError):
    """Operands have incompatible dimensions."""


class DimensionCapError(SteinLabError):
    """A tensor construction would exceed the configured dimension cap."""


class NonFiniteFunctionError(SteinLabError):
    """A matrix function evaluated to a non-finite value on some eigenvalue."""

    def __init__(self, eigenvalue, value):
        self.eigenvalue = eigenvalue
        self.value = value
        super().__init__(
            f"matrix function is not finite at eigenvalue {eigenvalue!r} (got {value!r}); "
            "this usually means a support violation such as a negative power of a singular operator"
        )


class InvalidStateError(SteinLabError):
    pass


class SupportError(SteinLabError):
    """Absolute continuity / faithfulness condition violated."""


class InvalidTestError(SteinLabError):
    """Operator is not a test (0 <= A <= I fails)."""


class InvalidMeasurementError(SteinLabError):
    pass


class ConfigError(SteinLabError):
    pass
