"""Exception hierarchy shared across the library and the CLI."""


class WalkError(Exception):
    """Base class for every error raised by this package."""


class NotUnitary(WalkError):
    """A matrix offered as a coin fails the unitarity check."""

    def __init__(self, max_deviation: float):
        self.max_deviation = float(max_deviation)
        super().__init__(
            f"matrix is not unitary: max |U†U - I| = {self.max_deviation:.3e}"
        )


class SingularDenominator(WalkError):
    """The transfer-matrix denominator at a site is numerically zero.

    The transfer-matrix construction is inapplicable for this combination
    of coin field and eigenvalue.
    """

    def __init__(self, site: int, magnitude: float):
        self.site = int(site)
        self.magnitude = float(magnitude)
        super().__init__(
            f"singular transfer denominator at site {self.site}: "
            f"|D| = {self.magnitude:.3e}"
        )


class ConstraintViolated(WalkError):
    """The supplied initial triple does not satisfy the origin constraint."""

    def __init__(self, residual: float):
        self.residual = float(residual)
        super().__init__(
            f"initial state violates the origin constraint: "
            f"residual = {self.residual:.3e}"
        )


class OverflowDetected(WalkError):
    """An amplitude component exceeded the overflow guard during propagation."""

    def __init__(self, site: int):
        self.site = int(site)
        super().__init__(f"amplitude overflow at site {self.site}")


class WindowTooSmall(WalkError):
    """A windowed operation was given fewer sites than it needs."""


class ParseError(WalkError):
    """A run configuration document could not be parsed."""


class ValidationError(WalkError):
    """A parsed configuration field has an invalid value."""

    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"invalid config field '{field}': {reason}")
