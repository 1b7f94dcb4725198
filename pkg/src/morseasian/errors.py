"""Exception and warning types shared across the library."""


class PoleError(ValueError):
    """Argument sits on (or within 1e-14 of) a gamma-function pole."""


class NoConvergence(ArithmeticError):
    """An iterative evaluation hit its term/panel budget before converging."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class DegenerateIndex(ValueError):
    """Whittaker second index with 2*mu an integer (logarithmic case).

    Public entry points resolve this internally by a symmetric imaginary
    perturbation; the exception only escapes internal helpers.
    """


class SpectrumError(ValueError):
    """Resolvent evaluated on (or too close to) the operator spectrum."""


class QuadratureFailure(RuntimeError):
    """A quadrature-backed operation could not reach its tolerance."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class MissingEnvelope(ValueError):
    """Semi-infinite integrand grows without a truncation envelope."""


class UnsupportedRegime(ValueError):
    """Market parameters outside the pricing formula's validity (nu >= 1)."""


class PrecisionWarning(UserWarning):
    """Computation proceeds but the accuracy budget is known to degrade."""
