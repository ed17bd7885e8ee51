import math

import pytest

from thermofn.asymptotic import error_scale
from thermofn.calibration import ASYM_GRID, SERIES_GRID, calibrate
from thermofn.config import Config
from thermofn.dispatch import (Method, MethodChoice, choose_method, evaluate,
                               quadrature_tol)
from thermofn.quadrature import IntegralParams, Kind, oracle_eval
from thermofn.series import Trust


def P(kind, z, nu=0, **kw):
    return IntegralParams(kind, z, nu, **kw)


def rel(a, b):
    return abs(a / b - 1)


def test_small_z_uses_series():
    c = choose_method(P(Kind.I1, 1.0))
    assert c.method is Method.SERIES
    assert "digits" in c.reason


def test_huge_z_uses_asymptotic_when_tolerance_allows():
    c = choose_method(P(Kind.I1, 500.0), tol=1e-2)
    assert c.method is Method.ASYMPTOTIC
    assert c.estimated_error <= 1e-2


def test_huge_z_tight_tolerance_falls_back_to_quadrature():
    c = choose_method(P(Kind.I1, 500.0), tol=1e-6)
    assert c.method is Method.QUADRATURE
    assert "crossover" in c.reason and "asymptotic error" in c.reason


def test_non_integer_order_skips_series():
    c = choose_method(P(Kind.I1, 1.0, 0.5))
    assert c.method is Method.QUADRATURE
    assert "integer" in c.reason


def test_divergent_depletion_reason():
    c = choose_method(P(Kind.I4, 2.0, 0, b=5.0, delta=3.0))
    assert c.method is Method.QUADRATURE
    assert "series failed" in c.reason


def test_choice_is_deterministic():
    p = P(Kind.I3, 12.0, 1, t=0.4)
    assert len({choose_method(p, 1e-6) for _ in range(5)}) == 1


def test_method_choice_rejects_negative_error():
    with pytest.raises(ValueError):
        MethodChoice(Method.SERIES, "", -1.0)


@pytest.mark.parametrize("tol,expected", [(1e-6, 1e-10), (1e-10, 1e-12), (1e-20, 1e-14), (1.0, 1e-10)])
def test_quadrature_tol_clamp(tol, expected):
    assert quadrature_tol(tol, Config()) == pytest.approx(expected)


@pytest.mark.parametrize("method", ["series", "asymptotic", "quadrature"])
def test_explicit_methods(method):
    r = evaluate(P(Kind.I1, 20.0, 1), method)
    assert r.method.value == method
    assert rel(r.value, oracle_eval(P(Kind.I1, 20.0, 1), 1e-12).value) <= 10 * r.estimated_error


def test_series_result_carries_diagnostics():
    r = evaluate(P(Kind.I2, 2.0, 2, d=10.0), "series")
    assert r.trust is Trust.RELIABLE
    assert r.diagnostics.cancellation_digits > 0


@pytest.mark.parametrize("tol", [1e-6, 1e-2])
@pytest.mark.parametrize("kind,kw", [
    (Kind.I1, {}), (Kind.I2, {"d": 5.0}), (Kind.I3, {"t": 1.0}), (Kind.I4, {"b": 0.1, "delta": 0.25})])
def test_realized_error_within_ten_times_estimate(kind, kw, tol):
    for nu in (0, 2):
        for z in SERIES_GRID[::4] + ASYM_GRID + (500.0,):
            p = P(kind, z, nu, **kw)
            r = evaluate(p, "auto", tol)
            err = rel(r.value, oracle_eval(p, 1e-13).value)
            assert err <= 10 * r.estimated_error, (z, nu, r.method, err, r.estimated_error)
            assert err <= tol


def test_auto_meets_tolerance_beyond_crossover():
    for z in (60.0, 120.0, 250.0, 500.0):
        p = P(Kind.I1, z)
        assert rel(evaluate(p).value, oracle_eval(p, 1e-13).value) < 1e-6


def test_calibration_is_reproducible():
    a, rows_a = calibrate(kinds=(Kind.I1,), nus=(0,))
    b, rows_b = calibrate(kinds=(Kind.I1,), nus=(0,))
    assert a == b and rows_a == rows_b
    zstar = a.series_zmax["i1.nu0"]
    assert zstar == Config().series_zmax["i1.nu0"]
    assert a.asym_c["i1"] <= Config().asym_c["i1"]
    below = max(z for z in SERIES_GRID if z <= zstar)
    above = min(z for z in SERIES_GRID if z > zstar)
    assert choose_method(P(Kind.I1, below), config=a).method is Method.SERIES
    assert choose_method(P(Kind.I1, above), config=a).method is not Method.SERIES
    accepted = [r for r in rows_a if r.series_accepted]
    assert accepted and all(r.series_error <= 1e-6 for r in accepted)


def test_calibration_asym_constant_bounds_errors():
    cfg, rows = calibrate(kinds=(Kind.I3,), nus=(0, 1), series_grid=())
    c = cfg.asym_c["i3"]
    for r in rows:
        if not math.isnan(r.asym_error):
            t = float(r.fixed.split("=")[1])
            assert r.asym_error <= c * error_scale("i3", r.z, r.nu, t=t)
