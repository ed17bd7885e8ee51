"""Exception hierarchy shared by all evaluation routes."""


class ThermoFnError(Exception):
    """Base class for numerical failures raised by this package."""


class PoleError(ThermoFnError, ValueError):
    """Gamma function evaluated at a non-positive integer."""


class ConvergenceError(ThermoFnError):
    """A series hit its term cap while its terms were still growing."""


class SeriesDivergenceError(ConvergenceError):
    """An outer expansion whose terms grow past the divergence guard."""


class QuadratureError(ThermoFnError):
    """Adaptive quadrature could not reach the requested tolerance."""


class StripError(ThermoFnError, ValueError):
    """Mellin transform requested outside its strip of convergence."""


class DomainError(ThermoFnError, ValueError):
    """Parameters outside the domain of a formula."""
