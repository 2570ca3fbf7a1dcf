"""Exception types shared across the package."""


class MultiquadError(Exception):
    """Base class for all package-specific errors."""


class InconsistencyError(MultiquadError):
    """A formula produced a non-integral or otherwise impossible value.

    This always indicates bad input data (e.g. a corrupt unit dataset),
    never a tolerance issue: all arithmetic here is exact.
    """


class PrecisionError(MultiquadError):
    """A numerical certificate could not be established at the precision cap."""


class DatasetError(MultiquadError):
    """A unit dataset is missing, unparseable, or failed verification."""
