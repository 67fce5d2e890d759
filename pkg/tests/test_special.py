"""Special functions against frozen high-precision reference values.

Reference decimals below were produced once with mpmath at 40 digits and
are stored here so the suite does not depend on it at run time.
"""
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from legmoments.errors import AccuracyError, DomainError
from legmoments.special import (EULER_GAMMA, ZETA3, BesselOrder, Degree, SpecialValue,
                                bessel_cyl, bessel_i, bessel_j, bessel_k, bessel_mod, bessel_y,
                                cospi, digamma, ik_scaled, jy, legendre_nu_derivative,
                                legendre_p, legendre_p_md, legendre_pair, legendre_poly,
                                legendre_q, legendre_q_neumann, nu_derivative_tableau,
                                polygamma, sinpi, trigamma)
from legmoments.special.bessel import _jy_asymptotic, _jy_scalar, asymptotic_crossover

# ---------------------------------------------------------------- oracles

POLYGAMMA_REF = [
    (0, 0.3, -3.502524222200133),
    (1, 2.5, 0.49035775610023485),
    (2, complex(-0.7, 0.4), complex(14.276546299125261, 10.179214446073678)),
    (2, 1e-3, -2000000002.3976324),
]

JY_REF = [
    (0.5, 1.7, 0.606848808007618, 0.07884632686109731),
    (2.3, 15.0, -0.0463973856925451, -0.2019127129247378),
    (0.0, 50.0, 0.055812327669251816, -0.09806499547007708),
    (1.0, 0.2, 0.099500832639236, -3.323824988111847),
    (0.0, 3.0, -0.26005195490193345, 0.3768500100127904),
    (4.5, 7.5, 0.17324451398253468, 0.2728104044702945),
]

# (mu, x, I_mu(x) e^-x, K_mu(x) e^x)
IK_REF = [
    (1.5, 0.3, 0.032667506227343074, 9.915655022690832),
    (0.0, 30.0, 0.0731459464822373, 0.22788666561625373),
    (0.0, 2.0, 0.30850832255367105, 0.8415682150707714),
    (2.5, 5.0, 0.09276052219309963, 0.9640584892204437),
    (0.25, 0.7, 0.46383056468778483, 1.3705104827003396),
]

# Ferrers functions on the cut
PQ_REF = [
    (0.37, 0.3, 0.7927314070279406, -0.3637834990728536),
    (-0.25, -0.7, 1.381669185212568, 0.11932107287805213),
    (complex(1.3, 0.7), 0.5, complex(0.29682788128746374, -0.49178330067175036),
     complex(-1.1264355697766057, -0.18165597123941657)),
    (2.6, -0.9, 0.1513750459568885, -1.025702037063409),
    (-1.0 / 3.0, 0.95, 1.005634075682415, 2.5929687170278615),
    (7.5, 0.1, -0.004943453128520287, 0.4437265514636286),
    (-0.8, 0.2, 1.0833209662317058, 5.419442129342977),
]

QN_REF = [(2, 0.3, -0.5629746555341357), (3, -0.6, -0.48286631833491356),
          (0, 0.8, 1.0986122886681098)]


def close(a, b, tol):
    return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(b)))


# ------------------------------------------------------------ core types

def test_degree_and_reflection():
    d = Degree.of(complex(0.3, -1.2))
    assert d.value == complex(0.3, -1.2)
    r = d.reflected()
    assert r.value == complex(-1.3, 1.2)
    assert Degree.of(2.0).is_real
    assert Degree.of(2.0 + 1e-9).distance_to_integer() == pytest.approx(1e-9, abs=1e-15)


def test_degree_rejects_non_finite():
    with pytest.raises(DomainError):
        Degree.of(math.inf)


def test_bessel_order_scaled_only_for_modified():
    with pytest.raises(DomainError):
        BesselOrder(1.0, "J", scaled=True)
    with pytest.raises(DomainError):
        BesselOrder(-0.3, "Y")
    BesselOrder(-0.5, "K", scaled=True)


def test_sinpi_cospi_exact_at_integers():
    for n in range(-5, 6):
        assert sinpi(float(n)) == 0.0
        assert cospi(n + 0.5) == 0.0


# ------------------------------------------------------------- polygamma

@pytest.mark.parametrize("m,z,ref", POLYGAMMA_REF)
def test_polygamma_reference(m, z, ref):
    v = polygamma(m, z)
    assert close(v.value, ref, 1e-13)
    assert v.abs_err <= 1e-13 * max(1.0, abs(v.value))


def test_polygamma_half_values():
    assert close(polygamma(0, 0.5).value, -EULER_GAMMA - 2 * math.log(2), 1e-13)
    assert close(polygamma(0, 0.5).value, -1.9635100260214235, 1e-13)
    assert close(polygamma(2, 0.5).value, -14 * ZETA3, 1e-13)
    assert close(polygamma(2, 0.5).value, -16.828796644234318, 1e-13)


def test_digamma_recurrence():
    assert abs(digamma(2.0) - digamma(1.0) - 1.0) <= 1e-13
    assert abs(trigamma(1.0) - math.pi ** 2 / 6) <= 1e-13


def test_polygamma_poles_and_orders():
    with pytest.raises(DomainError):
        polygamma(0, -3.0)
    with pytest.raises(DomainError):
        polygamma(0, 0.0)
    with pytest.raises(DomainError):
        polygamma(3, 1.0)


# ---------------------------------------------------------------- Bessel

@pytest.mark.parametrize("mu,x,j,y", JY_REF)
def test_jy_reference(mu, x, j, y):
    J, Y, _ = jy(mu, x)
    assert close(J, j, 1e-12)
    assert close(Y, y, 1e-12)


@pytest.mark.parametrize("mu,x,ie,ke", IK_REF)
def test_ik_scaled_reference(mu, x, ie, ke):
    Ie, Ke, Ei, Ek = ik_scaled(mu, x)
    assert close(Ie, ie, 1e-12)
    assert close(Ke, ke, 1e-12)
    assert Ei >= 0 and Ek >= 0


def test_bessel_small_argument_limits():
    assert bessel_j(0.0, 0.0) == 1.0
    assert abs(bessel_j(0.0, 1e-8) - 1.0) < 1e-15
    assert abs(bessel_i(0.0, 1e-8) - 1.0) < 1e-15


def test_first_zero_of_j0_by_bisection():
    lo, hi = 2.0, 3.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if bessel_j(0.0, lo) * bessel_j(0.0, mid) <= 0:
            hi = mid
        else:
            lo = mid
    assert abs(0.5 * (lo + hi) - 2.404825557695773) < 1e-12


def test_j_derivative_recurrence():
    mu, x, h = 1.5, 3.7, 1e-4
    d = (bessel_j(mu, x + h) - bessel_j(mu, x - h)) / (2 * h)
    assert abs(bessel_j(mu - 1, x) - bessel_j(mu + 1, x) - 2 * d) <= 1e-8


def test_product_i0_k0_large_argument():
    y = 200.0
    Ie, Ke, _, _ = ik_scaled(0.0, y)
    assert abs(y * Ie * Ke - 0.5) < 1e-5


def test_k_half_closed_form():
    assert close(bessel_k(0.5, 1.0), math.sqrt(math.pi / 2) * math.exp(-1.0), 1e-13)
    assert close(bessel_k(0.5, 1.0), 0.4610685044478946, 1e-13)


def test_scaled_modified_survive_large_argument():
    Ie, Ke, _, _ = ik_scaled(1.0, 700.0)
    assert np.isfinite(Ie) and np.isfinite(Ke)
    assert abs(Ie * math.sqrt(2 * math.pi * 700.0) - 1) < 1e-3
    with pytest.raises(OverflowError):
        bessel_i(0.0, 800.0)


def test_negative_order_modified():
    # I_{-1/2}(x) = sqrt(2/(pi x)) cosh x
    x = 0.8
    assert close(bessel_i(-0.5, x), math.sqrt(2 / (math.pi * x)) * math.cosh(x), 1e-13)


def test_bessel_domain_errors():
    with pytest.raises(DomainError):
        bessel_y(0.0, 0.0)
    with pytest.raises(DomainError):
        jy(-1.0, 1.0)
    with pytest.raises(DomainError):
        ik_scaled(-0.7, 1.0)


def test_bessel_wrappers_report_errors():
    v = bessel_cyl(BesselOrder(0.0, "Y"), np.array([1.0, 30.0]), tol=1e-12)
    assert v.value.shape == (2,)
    assert np.all(v.abs_err <= 1e-12 * np.maximum(1, np.abs(v.value)))
    k = bessel_mod(BesselOrder(0.0, "K", scaled=True), 2.0, tol=1e-12)
    assert close(k.value, 0.8415682150707714, 1e-12)
    with pytest.raises(DomainError):
        bessel_cyl(BesselOrder(0.0, "I"), 1.0)


@pytest.mark.parametrize("mu", [0.0, 0.5, 1.0, 2.3])
def test_bessel_crossover_continuity(mu):
    xc = asymptotic_crossover(mu)
    xs = xc + np.linspace(-2.0, 2.0, 9)
    big_j, big_y, _ = _jy_asymptotic(mu, xs)
    for x, a, b in zip(xs, big_j, big_y):
        j, y = _jy_scalar(mu, float(x))
        assert abs(a - j) <= 1e-10
        assert abs(b - y) <= 1e-10


@given(st.floats(0.01, 50.0))
def test_scaled_unscaled_i0_agree(x):
    assert abs(bessel_i(0.0, x) * math.exp(-x) - bessel_i(0.0, x, scaled=True)) \
        <= 1e-12 * max(1.0, bessel_i(0.0, x, scaled=True))


# -------------------------------------------------------------- Legendre

@pytest.mark.parametrize("nu,x,p,q", PQ_REF)
def test_legendre_reference(nu, x, p, q):
    P = legendre_p(nu, x)
    Q = legendre_q(nu, x)
    assert close(P.value, p, 1e-11)
    assert close(Q.value, q, 1e-11)
    assert P.abs_err <= 1e-11 * max(1.0, abs(P.value))


@pytest.mark.parametrize("n,x,q", QN_REF)
def test_legendre_q_integer(n, x, q):
    assert close(legendre_q(n, x).value, q, 1e-12)
    assert close(legendre_q_neumann(n, x).value, q, 1e-9)


def test_legendre_q_near_integer_is_continuous():
    for n in (0, 1, 3):
        for d in (1e-7, -1e-7, 1e-5):
            assert close(legendre_q(n + d, 0.4).value, legendre_q(n, 0.4).value, 10 * abs(d))


def test_legendre_q0_is_artanh():
    assert close(legendre_q(0, 0.5).value, math.atanh(0.5), 1e-13)
    assert close(legendre_q(1, 0.4).value, 0.4 * math.atanh(0.4) - 1.0, 1e-13)


def test_legendre_q_neumann_agreement():
    for n, x in ((1, 0.3), (3, -0.6)):
        assert abs(legendre_q(n, x).value - legendre_q_neumann(n, x).value) <= 1e-9


def test_legendre_q_reflection_offset():
    # Q_nu - Q_{-nu-1} = pi cot(nu pi) P_nu
    nu, x = 0.3, 0.4
    lhs = legendre_q(nu, x).value - legendre_q(-nu - 1, x).value
    rhs = math.pi * cospi(nu) / sinpi(nu) * legendre_p(nu, x).value
    assert abs(lhs - rhs) <= 1e-10


def test_legendre_p_special_points():
    for nu in (0.3, -1.7, complex(2, 1)):
        assert legendre_p(nu, 1.0).value == 1
    for x in (-0.5, 0.0, 0.7):
        assert close(legendre_p(1, x).value, x, 1e-14)
    assert close(legendre_p(-0.5, 0.0).value, legendre_p_md(-0.5, math.pi / 2).value, 1e-10)


def test_legendre_p_md_values():
    for th in (0.3, 1.0, 2.0):
        assert close(legendre_p_md(0.0, th).value, 1.0, 1e-12)
    assert close(legendre_p_md(2.0, math.pi / 3).value, -0.125, 1e-12)
    assert close(legendre_p_md(3.7, 1e-6).value, 1.0, 1e-9)


def test_legendre_p_close_to_minus_one():
    # 1 + x is exact in binary, so the log series keeps full accuracy
    x = -1.0 + 2.0 ** -40
    assert close(legendre_p(0.3, x).value, -6.520483165104464, 1e-13)
    assert close(legendre_p(complex(1.3, 0.7), x).value,
                 complex(28.40142440220017, 24.352788744211406), 1e-13)


def test_legendre_domain_and_accuracy_errors():
    with pytest.raises(DomainError):
        legendre_p(0.3, -1.0)
    with pytest.raises(DomainError):
        legendre_q(0.3, 1.0)
    with pytest.raises(AccuracyError):
        legendre_p(0.3, 0.2, tol=1e-18)


def test_legendre_pair_fold():
    z = np.array([0.1, 0.3, 0.5])
    pair = legendre_pair(0.37, z)
    for zi, pp, pn, qp, qn in zip(z, pair.p_pos, pair.p_neg, pair.q_pos, pair.q_neg):
        x = 1 - 2 * zi
        assert close(pp, legendre_p(0.37, x).value, 1e-13)
        assert close(pn, legendre_p(0.37, -x).value, 1e-13)
        assert close(qp, legendre_q(0.37, x).value, 1e-13)
        assert close(qn, legendre_q(0.37, -x).value, 1e-13)


@pytest.mark.parametrize("n", range(11))
def test_integer_degree_matches_polynomial(n):
    xs = np.linspace(-0.95, 0.95, 13)
    # three-term recurrence as the reference
    p0, p1 = np.ones_like(xs), xs.copy()
    ref = p0 if n == 0 else p1
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1) * xs * p1 - k * p0) / (k + 1)
        ref = p1
    got = np.array([complex(legendre_p(n, x).value).real for x in xs])
    assert np.max(np.abs(got - ref)) <= 1e-12
    assert np.max(np.abs(legendre_poly(n, xs) - ref)) <= 1e-12


@pytest.mark.parametrize("nu", [-1.0 / 6.0, -0.25, -1.0 / 3.0, 0.7, 2.3])
@pytest.mark.parametrize("theta", [0.2, 0.9, 1.5, 2.4])
def test_mehler_dirichlet_oracle(nu, theta):
    a = legendre_p(nu, math.cos(theta)).value
    b = legendre_p_md(nu, theta).value
    assert abs(a - b) <= 1e-9


@given(st.floats(-10.0, 10.0), st.floats(-0.95, 0.95))
def test_reflection_symmetry_p(nu, x):
    a = legendre_p(nu, x)
    b = legendre_p(-nu - 1.0, x)
    assert abs(a.value - b.value) <= 1e-10 * max(1.0, abs(a.value))


@given(st.floats(-10.0, 10.0).filter(lambda v: abs(v - round(v)) > 1e-3),
       st.floats(-0.95, 0.95))
def test_q_definition_consistency(nu, x):
    p = legendre_p(nu, x).value
    pm = legendre_p(nu, -x).value
    ref = math.pi * (cospi(nu) * p - pm) / (2 * sinpi(nu))
    q = legendre_q(nu, x).value
    assert abs(q - ref) <= 1e-10 * max(1.0, abs(ref)) / min(1.0, 1e3 * abs(sinpi(nu)))


# ------------------------------------------------------ degree derivative

@pytest.mark.parametrize("n,x", [(0, 0.5), (2, -0.3)])
def test_degree_derivative_gives_q(n, x):
    d_pos = legendre_nu_derivative(n, 1, x).value
    d_neg = legendre_nu_derivative(n, 1, -x).value
    assert abs(2 * legendre_q(n, x).value - (d_pos - (-1) ** n * d_neg)) <= 1e-7


def test_degree_derivative_at_one_is_zero():
    for n in range(4):
        assert abs(legendre_nu_derivative(n, 1, 1.0 - 1e-15).value) <= 1e-7


def test_degree_derivative_richardson_consistency():
    tab = nu_derivative_tableau(1, 1, 0.2)
    assert abs(tab[-1][-1] - tab[-1][-2]) <= 1e-8


def test_degree_derivative_higher_orders():
    v2 = legendre_nu_derivative(1, 2, 0.2)
    v3 = legendre_nu_derivative(1, 3, 0.2)
    assert v2.abs_err <= 1e-7
    assert v3.abs_err <= 1e-5
    assert isinstance(v2, SpecialValue)
