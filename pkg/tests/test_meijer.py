import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from thermofn.errors import DomainError
from thermofn.meijer import (GFunctionSpec, barrier_g_spec, barrier_integral,
                             enumerate_poles, g_residue_eval, i1_g_spec, i1_via_g,
                             i2_g_spec, i2_via_g, multiplication_rewrite_residual)
from thermofn.quadrature import IntegralParams, Kind, oracle_eval
from thermofn.series import i1_series, i2_series

F = Fraction


def table(spec, count):
    return [(p.location, p.order) for p in enumerate_poles(spec, count)]


def test_poles_nu0():
    assert table(i1_g_spec(1.0, 0), 6) == [
        (0, 1), (F(-1, 2), 1), (-1, 2), (F(-3, 2), 1), (-2, 2), (F(-5, 2), 1)]


def test_poles_nu2():
    poles = table(i1_g_spec(1.0, 2), 12)
    integer = [(loc, o) for loc, o in poles if loc.denominator == 1]
    half = [o for loc, o in poles if loc.denominator == 2]
    assert integer[:3] == [(0, 1), (-1, 1), (-2, 1)]
    assert all(o == 2 for _, o in integer[3:]) and integer[3][0] == -3
    assert set(half) == {1}


def test_poles_single_gamma():
    assert table(GFunctionSpec(1, 0, 0, 1, (), (0,), 1.0), 4) == [(0, 1), (-1, 1), (-2, 1), (-3, 1)]


@given(st.integers(0, 5), st.integers(5, 30))
def test_pole_classification(nu, count):
    poles = list(enumerate_poles(i1_g_spec(2.0, nu), count))
    locs = [p.location for p in poles]
    assert all(a > b for a, b in zip(locs, locs[1:]))
    for p in poles:
        if p.location.denominator == 2:
            assert p.order == 1
        elif p.location >= -nu:
            assert p.order == 1 and p.b_indices == (0,)
        else:
            assert p.order == 2 and p.b_indices == (0, 2)


def test_denominator_cancels_poles():
    # Γ(n + s)/Γ(n + 1 + s) = 1/(n + s): only the pole at -n survives from b = n
    spec = i2_g_spec(1.0, 5.0, 0, 0)
    poles = table(spec, 6)
    assert (-1, 2) in poles
    assert all(o == 1 for loc, o in poles if loc != -1)


def test_exponential_residue_sum():
    assert g_residue_eval(GFunctionSpec(1, 0, 0, 1, (), (0,), 1.0)) == pytest.approx(math.exp(-1), rel=1e-15)


@pytest.mark.parametrize("nu", [0, 1, 2])
@pytest.mark.parametrize("z", [0.5, 1.0, 2.0])
def test_i1_route_agreement(z, nu):
    assert i1_via_g(z, nu) == pytest.approx(i1_series(z, nu).value, rel=1e-12)


def test_i2_assembly():
    assert i2_via_g(1.0, 5.0, 0) == pytest.approx(i2_series(1.0, 5.0, 0).value, rel=1e-10)


@pytest.mark.parametrize("nu", [0, 1, 2])
@pytest.mark.parametrize("z", [0.5, 1.3, 2.9, 5.0])
def test_representation_matches_oracle(z, nu):
    spec, pref = barrier_g_spec(2, 1, 1.0, -nu, z)
    assert spec == i1_g_spec(z, nu)
    ref = oracle_eval(IntegralParams(Kind.I1, z, nu), 1e-12).value
    assert pref * g_residue_eval(spec) == pytest.approx(ref, rel=1e-8)


def test_barrier_spec_rho0():
    spec, pref = barrier_g_spec(2, 1, 1.0, 0.0, 3.0)
    assert spec.argument == pytest.approx(9 / 4)
    assert spec.b_params == (0, F(1, 2), 1)
    assert (spec.m, spec.n, spec.p, spec.q) == (3, 0, 0, 3)
    assert pref == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)


def test_barrier_spec_rho_minus2():
    spec, pref = barrier_g_spec(2, 1, 1.0, -2.0, 3.0)
    assert spec.b_params == (0, F(1, 2), 3)
    assert pref == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)


@pytest.mark.parametrize("z", [0.3, 1.0, 4.0])
def test_barrier_m1_n1_against_quadrature(z):
    spec, pref = barrier_g_spec(1, 1, 1.0, 0.0, z)
    assert spec.argument == z and spec.b_params == (0, 1)
    assert pref * g_residue_eval(spec) == pytest.approx(barrier_integral(1, 1, 1.0, 0.0, z), rel=1e-10)
    # G^{2,0}_{0,2}(z | 0, 1) = 2 sqrt(z) K_1(2 sqrt(z))
    assert g_residue_eval(spec) == pytest.approx(float(2 * mp.sqrt(z) * mp.besselk(1, 2 * mp.sqrt(z))),
                                                 rel=1e-12)


@pytest.mark.parametrize("m,n,p,rho,z", [
    (2, 1, 1.0, -1.0, 1.5), (2, 2, 0.7, -0.5, 2.0), (3, 2, 1.3, 0.0, 0.8), (1, 3, 2.0, -0.25, 1.1),
])
def test_barrier_representation_general(m, n, p, rho, z):
    spec, pref = barrier_g_spec(m, n, p, rho, z)
    with mp.workdps(30):
        g = mp.meijerg([[], []], [[mp.mpf(b.numerator) / b.denominator for b in spec.b_params], []],
                       spec.argument)
    assert pref * float(g) == pytest.approx(barrier_integral(m, n, p, rho, z), rel=1e-10)


@pytest.mark.parametrize("args", [(0, 1, 1.0, 0.0, 1.0), (2, 1, -1.0, 0.0, 1.0),
                                  (2, 1, 1.0, 0.5, 1.0), (2, 1, 1.0, 0.0, 0.0)])
def test_barrier_domain(args):
    with pytest.raises(DomainError):
        barrier_g_spec(*args)


@given(st.integers(1, 5), st.floats(-3, 0), st.floats(0.05, 4))
def test_multiplication_rewrite(n, rho, s):
    assert multiplication_rewrite_residual(n, rho, s) < 1e-12


def test_spec_validation():
    with pytest.raises(DomainError):
        GFunctionSpec(1, 0, 1, 1, (0,), (0,), 1.0)      # p < q violated
    with pytest.raises(DomainError):
        GFunctionSpec(1, 0, 0, 1, (), (0, 1), 1.0)      # wrong list length
    with pytest.raises(DomainError):
        GFunctionSpec(1, 0, 0, 1, (), (0,), 0.0)
    with pytest.raises(DomainError):
        GFunctionSpec(1, 1, 1, 2, (2,), (0, 0.5), 1.0)  # a - b = 2: poles collide


def test_unsupported_shape():
    spec = GFunctionSpec(4, 0, 0, 4, (), (0, 0.25, 0.5, 0.75), 1.0)
    with pytest.raises(DomainError):
        g_residue_eval(spec)
    assert len(enumerate_poles(spec, 8)) == 8


def test_float_parameters_snap_to_rationals():
    a = i1_g_spec(1.0, 0)
    b = GFunctionSpec(3, 0, 0, 3, (), (0.0, 0.5, 1.0), 0.25)
    assert table(a, 8) == table(b, 8)
