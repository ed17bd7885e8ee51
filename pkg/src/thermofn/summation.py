"""Compensated series summation with the package-wide truncation rule.

A series is stopped once three consecutive terms satisfy
``|term| < eps * |partial sum|``; ``cap`` bounds the number of terms.
Works for ``float`` and ``decimal.Decimal`` terms alike.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable

from .errors import ConvergenceError

FLOAT_EPS = 1e-16
TERM_CAP = 500
SMALL_RUN = 3


@dataclass
class SumResult:
    value: Any
    terms: int
    max_magnitude: Any
    converged: bool


class NeumaierSum:
    """Running sum with Neumaier's error compensation.

    Tracks the largest magnitude seen among terms and partial sums, which is
    what the cancellation diagnostics are built from.
    """

    def __init__(self, zero=0.0):
        self._sum = zero
        self._comp = zero
        self.max_magnitude = abs(zero)
        self.count = 0

    def add(self, term):
        s = self._sum
        t = s + term
        if abs(s) >= abs(term):
            self._comp += (s - t) + term
        else:
            self._comp += (term - t) + s
        self._sum = t
        self.count += 1
        mag = max(abs(term), abs(t))
        if mag > self.max_magnitude:
            self.max_magnitude = mag

    @property
    def value(self):
        return self._sum + self._comp


def neumaier_sum(values: Iterable, zero=0.0):
    acc = NeumaierSum(zero)
    for v in values:
        acc.add(v)
    return acc.value


def sum_series(terms: Iterable, eps=FLOAT_EPS, cap: int = TERM_CAP, zero=0.0,
               what: str = "series") -> SumResult:
    """Sum an (infinite) term iterator under the truncation rule.

    Raises ConvergenceError if ``cap`` terms are consumed while the terms
    are still growing; returns ``converged=False`` if the cap is hit with
    shrinking terms that never met the stopping test.
    """
    acc = NeumaierSum(zero)
    run = 0
    prev = None
    growing = False
    for term in terms:
        acc.add(term)
        mag = abs(term)
        growing = prev is not None and mag > prev
        prev = mag
        if mag < eps * abs(acc.value) or (mag == 0 and acc.value == 0):
            run += 1
            if run >= SMALL_RUN:
                return SumResult(acc.value, acc.count, acc.max_magnitude, True)
        else:
            run = 0
        if acc.count >= cap:
            break
    else:
        # finite iterator exhausted: exact finite sum
        return SumResult(acc.value, acc.count, acc.max_magnitude, True)
    if growing:
        raise ConvergenceError(f"{what}: term cap {cap} reached with terms still growing")
    return SumResult(acc.value, acc.count, acc.max_magnitude, False)
