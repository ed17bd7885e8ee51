"""Thermonuclear reaction-rate integrals and their Meijer G representations."""

from .config import Config, load_config
from .dispatch import EvalResult, Method, choose_method, evaluate
from .errors import (ConvergenceError, DomainError, PoleError, QuadratureError,
                     SeriesDivergenceError, StripError, ThermoFnError)
from .quadrature import IntegralParams, Kind, oracle_eval
from .rates import ReactionSpec, assemble_rate
from .series import Trust, i1_series, i2_series, i3_series, i4_series

__version__ = "0.1.0"

__all__ = [
    "Config", "load_config", "EvalResult", "Method", "choose_method", "evaluate",
    "ConvergenceError", "DomainError", "PoleError", "QuadratureError",
    "SeriesDivergenceError", "StripError", "ThermoFnError",
    "IntegralParams", "Kind", "oracle_eval", "ReactionSpec", "assemble_rate",
    "Trust", "i1_series", "i2_series", "i3_series", "i4_series",
]
