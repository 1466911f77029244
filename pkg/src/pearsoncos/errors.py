"""Exception types raised by the library."""


class PearsonCosError(ValueError):
    """Base class for data and domain errors."""


class UndefinedMeasureError(PearsonCosError):
    """A measure or ratio is undefined for the given input (zero or constant vector)."""


class MatrixFormatError(PearsonCosError):
    """A matrix file could not be parsed or failed validation."""
