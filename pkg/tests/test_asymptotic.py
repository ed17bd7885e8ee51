import math

import pytest
from hypothesis import assume, given, strategies as st

from thermofn.asymptotic import (AsymptoticParams, asymptotic_params, error_scale,
                                 g_asymptotic, i1_asymptotic, i2_asymptotic,
                                 i3_asymptotic, i4_asymptotic)
from thermofn.errors import DomainError
from thermofn.meijer import GFunctionSpec, i1_g_spec, i2_g_spec
from thermofn.quadrature import IntegralParams, Kind, oracle_eval

Z_GRID = (10.0, 20.0, 40.0, 80.0, 160.0)


def deviation(value, kind, z, nu, **kw):
    return abs(value / oracle_eval(IntegralParams(kind, z, nu, **kw), 1e-12).value - 1)


@pytest.mark.parametrize("z", [0.5, 3.0, 50.0])
def test_i1_closed_form_at_nu0(z):
    x = z * z / 4
    expected = 2 * math.sqrt(math.pi / 3) * x ** (1 / 6) * math.exp(-3 * x ** (1 / 3))
    assert i1_asymptotic(z, 0) == pytest.approx(expected, rel=1e-14)


def test_i1_within_ten_percent_at_50():
    assert deviation(i1_asymptotic(50.0, 0), Kind.I1, 50.0, 0) < 0.10


def test_i1_improves_from_50_to_100():
    assert deviation(i1_asymptotic(100.0, 0), Kind.I1, 100.0, 0) < \
        deviation(i1_asymptotic(50.0, 0), Kind.I1, 50.0, 0)


@given(st.floats(0.5, 300), st.floats(0.1, 50), st.floats(0, 3))
def test_i2_log_structure(z, d, nu):
    assume(z / math.sqrt(d) < 650)  # keep the value out of subnormal range
    expected = (nu + 1) * math.log(d) - d + 0.5 * math.log(4 * d / (z * z)) - z / math.sqrt(d)
    assert math.log(i2_asymptotic(z, d, nu)) == pytest.approx(expected, rel=1e-12, abs=1e-12)


@pytest.mark.xfail(strict=True, reason="leading-order I2 form is 22% low at z=60, d=5")
def test_i2_within_fifteen_percent_at_60():
    assert deviation(i2_asymptotic(60.0, 5.0, 0), Kind.I2, 60.0, 0, d=5.0) < 0.15


def test_i2_improves_along_z():
    devs = [deviation(i2_asymptotic(z, 5.0, 0), Kind.I2, z, 0, d=5.0) for z in (40, 60, 80)]
    assert devs[0] > devs[1] > devs[2]


@given(st.floats(0.5, 500), st.integers(0, 4))
def test_i3_without_screening_is_i1(z, nu):
    assert i3_asymptotic(z, 0.0, nu) == pytest.approx(i1_asymptotic(z, nu), rel=1e-13)


def test_i3_within_fifteen_percent_at_50():
    assert deviation(i3_asymptotic(50.0, 1.0, 1), Kind.I3, 50.0, 1, t=1.0) < 0.15


def test_i3_improves_along_z():
    devs = [deviation(i3_asymptotic(z, 1.0, 1), Kind.I3, z, 1, t=1.0) for z in (30, 60, 120)]
    assert devs[0] > devs[1] > devs[2]


def test_i3_domain():
    # (z²/4)^(1/3) = 1 at z = 2
    with pytest.raises(DomainError):
        i3_asymptotic(2.0, 1.0, 0)
    assert error_scale("i3", 2.0, 0, t=1.0) == math.inf


def test_i4_without_depletion_is_i1():
    assert i4_asymptotic(30.0, 1.0, 0.0, 2) == i1_asymptotic(30.0, 2)


@given(st.floats(0.5, 300), st.floats(0.05, 3), st.floats(0, 2), st.floats(0, 3))
def test_i4_ratio_identity(z, delta, b, nu):
    ratio = i4_asymptotic(z, delta, b, nu) / i1_asymptotic(z, nu)
    assert ratio == pytest.approx(math.exp(-b * (z * z / 4) ** (delta / 3)), rel=1e-13)


def test_i4_within_fifteen_percent_at_50():
    assert deviation(i4_asymptotic(50.0, 1.0, 0.1, 0), Kind.I4, 50.0, 0, b=0.1, delta=1.0) < 0.15


@pytest.mark.parametrize("kind,nu,kw", [
    (Kind.I1, 0, {}), (Kind.I1, 1, {}),
    (Kind.I2, 0, {"d": 1.0}), (Kind.I2, 1, {"d": 5.0}),
    (Kind.I3, 0, {"t": 0.1}), (Kind.I3, 1, {"t": 1.0}),
    (Kind.I4, 0, {"b": 0.1, "delta": 0.25}), (Kind.I4, 1, {"b": 0.1, "delta": 0.25}),
])
def test_deviation_decreases_along_geometric_grid(kind, nu, kw):
    fn = {Kind.I1: lambda z: i1_asymptotic(z, nu),
          Kind.I2: lambda z: i2_asymptotic(z, kw.get("d"), nu),
          Kind.I3: lambda z: i3_asymptotic(z, kw.get("t"), nu),
          Kind.I4: lambda z: i4_asymptotic(z, kw.get("delta"), kw.get("b"), nu)}[kind]
    devs = [deviation(fn(z), kind, z, nu, **kw) for z in Z_GRID]
    assert all(a > b for a, b in zip(devs, devs[1:]))
    assert devs[-1] < 0.10


@pytest.mark.parametrize("nu", [0, 1, 2, 3])
def test_g_asymptotic_reproduces_i1(nu):
    for z in (5.0, 40.0, 200.0):
        g = g_asymptotic(i1_g_spec(z, nu)) / math.sqrt(math.pi)
        assert g == pytest.approx(i1_asymptotic(z, nu), rel=1e-14)


@pytest.mark.parametrize("nu", [0, 1, 2])
def test_sigma_theta_for_i1_representation(nu):
    ap = asymptotic_params(i1_g_spec(10.0, nu))
    assert ap.sigma == 3
    assert ap.theta == pytest.approx((2 * nu + 1) / 6, abs=1e-15)
    assert ap.prefactor == pytest.approx(2 * math.pi / math.sqrt(3))


def test_single_gamma_is_exponential():
    spec = GFunctionSpec(1, 0, 0, 1, (), (0,), 1.0)
    for z in (1.0, 10.0, 100.0):
        assert g_asymptotic(spec, z) / math.exp(-z) == pytest.approx(1.0, abs=1e-15)


def test_i2_representation_parameters():
    ap = asymptotic_params(i2_g_spec(10.0, 2.0, 0, 0))
    assert (ap.sigma, ap.theta) == (2, -0.5)


def test_invalid_asymptotic_params():
    with pytest.raises(DomainError):
        AsymptoticParams(0, 0.0, 1.0)
    with pytest.raises(DomainError):
        AsymptoticParams(2, math.nan, 1.0)
    with pytest.raises(DomainError):
        g_asymptotic(GFunctionSpec(1, 0, 0, 1, (), (0,), 1.0), -1.0)


@pytest.mark.parametrize("fn,args", [(i1_asymptotic, (0.0, 0)), (i2_asymptotic, (1.0, 0.0, 0)),
                                     (i4_asymptotic, (-1.0, 1.0, 0.1, 0))])
def test_domain_errors(fn, args):
    with pytest.raises(DomainError):
        fn(*args)


def test_error_scale_shapes():
    assert error_scale("i1", 160.0, 0) < error_scale("i1", 10.0, 0)
    assert error_scale("i2", 60.0, 0, d=5.0) == pytest.approx(5 ** 1.5 / 60)
    # stretched depletion with delta >= 1/2 has no decaying error model
    assert error_scale("i4", 100.0, 0, b=0.1, delta=1.0) == math.inf
    with pytest.raises(ValueError):
        error_scale("i9", 1.0)
