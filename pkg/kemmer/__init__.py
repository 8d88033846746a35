"""Exact verification toolkit and Landau-level solver for the Kemmer equation."""

__version__ = "0.1.0"
__all__ = [
    "KemmerError",
    "RepresentationError",
    "DimensionError",
    "FieldError",
    "BoxIntegrationError",
    "EnergyRelationError",
    "OperatorError",
    "SpectrumError",
    "ConvergenceError",
    "RouteDisagreementError",
    "NormError",
    "ConfigError",
]


class KemmerError(Exception):
    pass


class RepresentationError(KemmerError):
    pass


class DimensionError(KemmerError):
    pass


class FieldError(KemmerError):
    pass


class BoxIntegrationError(KemmerError):
    pass


class EnergyRelationError(KemmerError):
    pass


class OperatorError(KemmerError):
    pass


class SpectrumError(KemmerError):
    pass


class ConvergenceError(SpectrumError):
    pass


class RouteDisagreementError(SpectrumError):
    pass


class NormError(KemmerError):
    pass


class ConfigError(KemmerError):
    pass
