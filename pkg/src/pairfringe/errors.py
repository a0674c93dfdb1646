"""Exception types shared across the package."""


class InvalidStateError(ValueError):
    """Amplitude vector cannot describe a pure state (zero norm, bad shape, ...)."""


class InvalidDensityError(ValueError):
    """Matrix violates a density-matrix invariant (Hermiticity, trace, positivity)."""


class ParameterError(ValueError):
    """Scalar parameter outside its admissible range."""


class UnsupportedClosedFormError(ValueError):
    """Closed-form expressions assume real amplitudes; use the matrix path instead."""


class UndefinedVisibilityError(ValueError):
    """Fringe contrast (max-min)/(max+min) is undefined because max+min = 0."""


class PulseParseError(ValueError):
    """Pulse-program text could not be parsed.

    Carries the byte offset of the offending token in ``offset``.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
