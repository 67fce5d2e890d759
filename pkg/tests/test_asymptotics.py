import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from legmoments.asymptotics import (
    ASYM_CHECKS, CUBIC_PI_CUBED, CUBIC_PI_SQUARED, HH_DEGREES, MOMENT_THRESHOLD,
    DecayFit, a_limit, b_limit, check_records, closest_cubic_constant, cubic_coefficient,
    fit_decay, hansen_heine_rate, hansen_heine_residual, moment_decay, moment_residual,
    resolve_cubic_coefficient, richardson_derivative, sample_degree, taylor_check,
    taylor_refs, theta_grid,
)
from legmoments.errors import DomainError
from legmoments.identities.closed_forms import a_right
from legmoments.identities.moments import a_left
from legmoments.report import VerificationRecord

# 14 zeta(3) / pi^4 and related constants from mpmath at 30 digits
ZETA_TERM = 0.17276412771740085


# ------------------------------------------------------------- fit_decay

def test_fit_exact_inverse_power():
    s = [2.0, 5.0, 11.0, 40.0]
    fit = fit_decay(s, [1.0 / x for x in s])
    assert isinstance(fit, DecayFit)
    assert abs(fit.exponent + 1.0) <= 1e-12
    assert fit.r_squared == pytest.approx(1.0, abs=1e-14)
    assert abs(fit.intercept) <= 1e-12


@given(p=st.floats(-3.0, 3.0), c=st.floats(0.01, 100.0),
       scales=st.lists(st.floats(1.0, 1e4), min_size=4, max_size=10, unique=True))
def test_fit_recovers_power_law(p, c, scales):
    if max(scales) / min(scales) < 1.5:
        return
    fit = fit_decay(scales, [c * x ** p for x in scales])
    assert abs(fit.exponent - p) <= 1e-10
    assert abs(fit.intercept - math.log(c)) <= 1e-8
    if abs(p) > 0.05:
        # a flat law has no variance to explain
        assert fit.r_squared >= 1.0 - 1e-12


def test_fit_points_sorted_and_r_squared_from_points():
    fit = fit_decay([8.0, 2.0, 4.0, 16.0], [0.1, 0.5, 0.2, 0.07])
    assert [p[0] for p in fit.points] == [2.0, 4.0, 8.0, 16.0]
    lx = np.log([p[0] for p in fit.points])
    ly = np.log([p[1] for p in fit.points])
    pred = fit.exponent * lx + fit.intercept
    r2 = 1 - np.sum((ly - pred) ** 2) / np.sum((ly - ly.mean()) ** 2)
    assert fit.r_squared == pytest.approx(r2, abs=1e-14)
    assert 0.0 <= fit.r_squared <= 1.0


@pytest.mark.parametrize("scales,res", [
    ([1, 2, 3], [1, 1, 1]),
    ([1, 2, 3, 4], [1, 0, 1, 1]),
    ([1, 2, 3, 4], [1, -1, 1, 1]),
    ([1, 2, 3, 4], [1, math.nan, 1, 1]),
    ([3, 3, 3, 3], [1, 2, 3, 4]),
    ([1, 2, 3, 4], [1, 2, 3]),
    ([0, 2, 3, 4], [1, 2, 3, 4]),
])
def test_fit_rejects_bad_input(scales, res):
    with pytest.raises(DomainError):
        fit_decay(scales, res)


# ----------------------------------------------------------- Hansen-Heine

def test_theta_grid():
    t = theta_grid(40)
    assert t.size == 40 and t[0] > 0 and t[-1] == pytest.approx(math.pi / 2)
    with pytest.raises(DomainError):
        theta_grid(0)


@pytest.mark.parametrize("kind", ["P", "Q"])
def test_hh_residual_bound(kind):
    nu = 20.25
    assert hansen_heine_residual(nu, kind=kind) <= 0.5 / (2 * nu + 1)


@pytest.mark.parametrize("kind", ["P", "Q"])
def test_hh_pointwise_residual_vanishes_near_zero(kind):
    prev = math.inf
    for t in (1e-2, 1e-3, 1e-4, 1e-5):
        r = hansen_heine_residual(7.25, [t], kind)
        assert r <= prev * 1.01 + 1e-15
        prev = r
    # P side: both terms tend to 1 and the gap closes like t^2
    assert hansen_heine_residual(7.25, [1e-5], "P") <= 1e-8


@given(nu=st.floats(2.0, 20.0))
def test_hh_residual_shrinks_with_degree(nu):
    grid = theta_grid(40)
    r1 = hansen_heine_residual(nu, grid, "P")
    r2 = hansen_heine_residual(2 * nu + 0.5, grid, "P")
    assert r2 <= 3.0 * r1
    assert r1 <= 0.5 / (2 * nu + 1) * 4


def test_hh_residual_domain():
    with pytest.raises(DomainError):
        hansen_heine_residual(1.5)
    with pytest.raises(DomainError):
        hansen_heine_residual(complex(3.0, 1.0))
    with pytest.raises(DomainError):
        hansen_heine_residual(5.0, [])
    with pytest.raises(DomainError):
        hansen_heine_residual(5.0, [0.0, 0.3])
    with pytest.raises(DomainError):
        hansen_heine_residual(5.0, [2.0])
    with pytest.raises(DomainError):
        hansen_heine_residual(5.0, kind="R")


def test_hh_rate_is_a_clean_power_law():
    fit = hansen_heine_rate(HH_DEGREES, "P")
    assert fit.r_squared > 0.99
    assert fit.exponent < -0.8


# ----------------------------------------------------- scaled moment limits

def test_sample_degree():
    assert sample_degree(4) == 4.25
    assert sample_degree(32) == 32.25


def test_limits_at_quarter_degrees():
    # at nu = N + 1/4, sin = cos = +-1/sqrt 2
    nu = 4.25
    s = math.sin(math.pi * nu)
    c = math.cos(math.pi * nu)
    assert a_limit(nu) == pytest.approx(4 * (ZETA_TERM + c / (math.pi * s ** 3)), rel=1e-14)
    expect_b = 2 * c / (math.pi * s) + 4 * (0.5772156649015329 + 2 * math.log(2) + math.log(nu)) / math.pi ** 2
    assert b_limit(nu) == pytest.approx(expect_b, rel=1e-14)


@pytest.mark.parametrize("which", ["A", "B"])
def test_moment_residual_identity_gap(which):
    s = moment_residual(which, 4)
    assert s.nu == 4.25
    assert s.identity_gap <= 1e-6
    assert s.residual > 0


def test_moment_residual_domain():
    with pytest.raises(DomainError):
        moment_residual("C", 4)
    with pytest.raises(DomainError):
        moment_residual("A", 0)


@pytest.mark.parametrize("which", ["A", "B"])
def test_moment_decay_rate(which):
    fit, samples = moment_decay(which)
    assert fit.exponent <= MOMENT_THRESHOLD
    assert [s.N for s in samples] == [4, 8, 16, 32]
    assert max(s.identity_gap for s in samples) <= 1e-6


# ----------------------------------------------------------- derivatives

@pytest.mark.parametrize("m,expect", [(1, math.cos(0.3)), (2, -math.sin(0.3)), (3, -math.cos(0.3))])
def test_richardson_on_sine(m, expect):
    d, err = richardson_derivative(math.sin, 0.3, m, 0.1)
    assert abs(d - expect) <= 1e-7
    assert err <= 1e-5


def test_richardson_bad_order():
    with pytest.raises(DomainError):
        richardson_derivative(math.sin, 0.0, 4, 0.1)


def test_taylor_a_at_zero():
    t = taylor_check("A_L", 0)
    assert abs(t.coeffs[0] - 4.0) <= 1e-4
    assert abs(t.coeffs[1]) <= 1e-3
    assert len(t.coeffs) == 3 and len(t.refs) == 3
    assert t.max_abs_dev == pytest.approx(max(abs(c - r) for c, r in zip(t.coeffs, t.refs)))


def test_taylor_b_at_one():
    t = taylor_check("B_L", 1)
    assert abs(t.coeffs[0] - 2.0) <= 9e-4


@pytest.mark.parametrize("n", [0, 1, 2])
def test_taylor_slopes_and_ratio(n):
    ta = taylor_check("A_L", n)
    tb = taylor_check("B_L", n)
    assert abs(ta.coeffs[0] - 4.0) <= 1e-3
    assert abs(tb.coeffs[0] - 2.0) <= 1e-3
    assert abs(ta.coeffs[0] / tb.coeffs[0] - 2.0) <= 1e-3
    assert abs(ta.coeffs[2] - ta.refs[2]) <= 0.1


def test_taylor_refs_values():
    refs, prov = taylor_refs("A_L", 0)
    # 288 - 16 pi^2 - 288 for the scaled function at n = 0
    assert refs == (4.0, 0.0, pytest.approx(-16 * math.pi ** 2))
    assert len(prov) == 3
    refs_b, _ = taylor_refs("B_L", 0)
    assert refs_b[1] == pytest.approx(16 * math.log(2))
    with pytest.raises(DomainError):
        taylor_refs("C_L", 0)


@pytest.mark.parametrize("side,n", [("A_R", 0), ("A_L", 4), ("A_L", -1), ("B_L", 1.5)])
def test_taylor_domain(side, n):
    with pytest.raises(DomainError):
        taylor_check(side, n)


# -------------------------------------------------------------- cubic term

def test_cubic_coefficient_of_polynomial():
    # (2v+1)^2 f(v) = v - 5 v^3 exactly when f = (v - 5 v^3)/(2v+1)^2
    c = cubic_coefficient(lambda v: (v - 5 * v ** 3) / (2 * v + 1) ** 2)
    assert c == pytest.approx(-5.0, abs=1e-8)


def test_resolve_cubic():
    c = resolve_cubic_coefficient()
    assert abs(c - CUBIC_PI_SQUARED) <= 0.1
    assert abs(c - CUBIC_PI_CUBED) > 50
    assert closest_cubic_constant(c) == "-8 pi^2/3"
    assert abs(resolve_cubic_coefficient(5e-3) - c) <= 1e-3 * abs(c)


def test_cubic_left_side_agrees():
    c = resolve_cubic_coefficient()
    cl = cubic_coefficient(lambda v: a_left(v, 1e-14).value)
    assert abs(cl - c) <= 1e-2


def test_cubic_helpers():
    assert closest_cubic_constant(CUBIC_PI_CUBED + 1) == "-8 pi^3/3"
    with pytest.raises(DomainError):
        resolve_cubic_coefficient(0.5)
    assert a_right(0.0).value == pytest.approx(0.0, abs=1e-15)


# ------------------------------------------------------------------ records

@pytest.mark.parametrize("check", ASYM_CHECKS)
def test_check_records_structure(check):
    recs = check_records(check)
    assert recs
    for r in recs:
        assert isinstance(r, VerificationRecord)
        assert r.id.startswith("ASYM_")
        assert r.tol == 0.0
        assert all(math.isfinite(v) for k, v in r.params.items() if k in ("lo", "hi"))
        assert r.passed == (r.abs_diff == 0.0)


def test_check_records_unknown():
    with pytest.raises(DomainError):
        check_records("nope")


def test_cubic_records_pass():
    assert all(r.passed for r in check_records("cubic"))
