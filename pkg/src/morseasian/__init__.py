"""Spectral decomposition of the Morse-potential Schroedinger operator
(discrete + continuum, numerically verified completeness) and its application
to arithmetic-average Asian option pricing, with a Monte Carlo oracle."""

from ._backend import backend_name
from .errors import (
    DegenerateIndex,
    MissingEnvelope,
    NoConvergence,
    PoleError,
    PrecisionWarning,
    QuadratureFailure,
    SpectrumError,
    UnsupportedRegime,
)

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "DegenerateIndex",
    "MissingEnvelope",
    "NoConvergence",
    "PoleError",
    "PrecisionWarning",
    "QuadratureFailure",
    "SpectrumError",
    "UnsupportedRegime",
    "__version__",
]
