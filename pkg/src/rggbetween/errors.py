"""Exception hierarchy shared by every module."""


class RGGError(ValueError):
    """Base class for numeric and domain errors (CLI exit status 3)."""


class NonConvexDomain(RGGError):
    pass


class OriginOutside(RGGError):
    pass


class InvalidDomain(RGGError):
    pass


class DegenerateDistance(RGGError):
    pass


class TooLarge(RGGError):
    pass


class DegenerateN(RGGError):
    pass


class OutOfDomain(RGGError):
    pass


class InsufficientData(RGGError):
    pass


class ConfigError(Exception):
    """Bad user configuration (CLI exit status 2)."""
