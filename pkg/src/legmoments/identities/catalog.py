"""Declarative catalog of the verifiable identities.

Each entry binds an id to its two sides, the parameters it takes and their
admissible domain, an anchor string naming the formula, and a default
tolerance by identity class:

============================  =======
class                         default
============================  =======
Legendre quartic moments      1e-8
identity B                    1e-7
polynomial-kernel integrals   1e-9
oscillatory Bessel moments    1e-6
K0^4 moment                   1e-10
I0 K0 exponential moment      1e-9
I K product moment            1e-8
============================  =======
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from ..errors import DomainError, UnknownIdentityError
from ..quadrature import QuadResult
from ..special.bessel import ik_scaled
from ..special.core import EULER_GAMMA, LOG2, ZETA3, ZETA5, Degree, SpecialValue, cospi, sinpi
from ..special.legendre import legendre_pq, legendre_q
from ..special.polygamma import polygamma
from . import moments as M
from .closed_forms import a_right, b_right

_PI = math.pi
_EPS = 2.220446049250313e-16

TOL_QUARTIC = 1e-8
TOL_B = 1e-7
TOL_POLY = 1e-9
TOL_OSC = 1e-6
TOL_K04 = 1e-10
TOL_IK_EXP = 1e-9
TOL_IIKK = 1e-8

# largest |Im nu| accepted for complex degrees
MAX_IMAG_DEGREE = 2.0
MAX_REAL_DEGREE = 60.0
MAX_INTEGER_DEGREE = 40
# the principal-value pole must keep this distance from +-1
PV_MARGIN = 1e-6


@dataclass(frozen=True)
class IdentitySpec:
    """One catalog entry.

    Attributes
    ----------
    id : str
        Upper-case key.
    description : str
        The identity in words and symbols.
    param_domain : str
        Human-readable admissible region; ``check`` enforces it.
    params : tuple of str
        Parameter names, in display order.
    lhs_kind, rhs_kind : str
        Evaluator tags (``"quad_finite"``, ``"quad_pv"``, ``"quad_osc"``,
        ``"quad_decaying"``, ``"closed_form"``, ``"constant"``,
        ``"special_values"``).
    anchor : str
        The printed formula the entry reproduces.
    default_tol : float
    """

    id: str
    description: str
    param_domain: str
    params: tuple
    lhs_kind: str
    rhs_kind: str
    anchor: str
    default_tol: float
    defaults: dict = field(default_factory=dict, repr=False)
    check: Callable[[dict], None] = field(default=lambda p: None, repr=False, compare=False)
    lhs: Callable = field(default=None, repr=False, compare=False)
    rhs: Callable = field(default=None, repr=False, compare=False)


# ------------------------------------------------------------- parameters

def _degree(v, name="nu") -> complex | float:
    try:
        d = Degree.of(v)
    except (TypeError, ValueError) as e:
        raise DomainError(f"{name} must be a number, got {v!r}") from e
    return d.re if d.is_real else d.value


def _real(v, name) -> float:
    if isinstance(v, complex):
        if v.imag != 0.0:
            raise DomainError(f"{name} must be real")
        v = v.real
    try:
        out = float(v)
    except (TypeError, ValueError) as e:
        raise DomainError(f"{name} must be a real number, got {v!r}") from e
    if not math.isfinite(out):
        raise DomainError(f"{name} must be finite")
    return out


def _integer(v, name="n") -> int:
    r = _real(v, name)
    if r != round(r):
        raise DomainError(f"{name} must be an integer")
    return int(round(r))


_CONVERTERS = {"nu": _degree, "n": _integer, "x": _real, "y": _real, "mu": _real,
               "a": _real, "b": _real, "c": _real}


def _bounded_degree(p):
    nu = complex(p["nu"])
    if abs(nu.imag) > MAX_IMAG_DEGREE or abs(nu.real) > MAX_REAL_DEGREE:
        raise DomainError(f"nu must satisfy |Im nu| <= {MAX_IMAG_DEGREE} and |Re nu| <= {MAX_REAL_DEGREE}")


def _nonneg_n(p):
    if not 0 <= p["n"] <= MAX_INTEGER_DEGREE:
        raise DomainError(f"n must be an integer in [0, {MAX_INTEGER_DEGREE}]")


def _cut_x(p):
    if not abs(p["x"]) < 1.0 - PV_MARGIN:
        raise DomainError("x must lie in (-1, 1), at least 1e-6 from the endpoints")


def _all(*checks):
    def run(p):
        for c in checks:
            c(p)
    return run


def _real_degree(lo: float, strict: bool = True):
    def run(p):
        nu = p["nu"]
        if isinstance(nu, complex):
            raise DomainError("nu must be real for this identity")
        if (nu <= lo) if strict else (nu < lo):
            raise DomainError(f"nu must be {'>' if strict else '>='} {lo:g}")
        if nu > MAX_REAL_DEGREE:
            raise DomainError(f"nu must be <= {MAX_REAL_DEGREE}")
    return run


def _positive(*names):
    def run(p):
        for k in names:
            if not p[k] > 0.0:
                raise DomainError(f"{k} must be positive")
    return run


def _distinct(u, v):
    def run(p):
        if p[u] == p[v]:
            raise DomainError(f"{u} and {v} must differ")
    return run


def _weber_order(p):
    if not 1.0 <= p["mu"] <= MAX_REAL_DEGREE:
        raise DomainError(f"mu must lie in [1, {MAX_REAL_DEGREE}]")


def _positive_real_degree(p):
    if not complex(p["nu"]).real > 0.0:
        raise DomainError("Re nu must be positive")


def _commensurate(*exprs):
    def run(p):
        M.common_frequency(*[e(p) for e in exprs])
    return run


# ------------------------------------------------------------ helpers

def _scaled(k, r: QuadResult) -> QuadResult:
    return QuadResult(k * r.value, abs(k) * r.err_est, r.n_evals, r.converged)


def _const(v: float) -> Callable:
    return lambda p, tol: SpecialValue(v, 0.0)


def _sinc(w: complex) -> complex:
    """sin(pi w)/(pi w), continuous at 0."""
    if abs(w) < 1e-8:
        return 1.0 - (_PI * w) ** 2 / 6.0
    return complex(sinpi(w)) / (_PI * w)


def _collapse(v: complex, like) -> complex | float:
    return v.real if not isinstance(like, complex) else v


def _legendre_values(nu, x):
    P, Q, eP, eQ = legendre_pq(nu, [x, -x])
    return P[0], P[1], Q[0], Q[1], eP, eQ


# ------------------------------------------------------------ right sides

def _rhs_p3p(p, tol):
    nu = p["nu"]
    s2 = 2.0 * complex(sinpi(nu)) * complex(cospi(nu))
    v = s2 * complex(cospi(nu)) / _PI
    return SpecialValue(_collapse(v, nu), 8 * _EPS * abs(v))


def _rhs_tricomi_pp(p, tol):
    Pp, Pm, _, _, eP, _ = _legendre_values(p["nu"], p["x"])
    v = Pp * Pp - Pm * Pm
    return SpecialValue(v, 2 * (abs(Pp) * eP[0] + abs(Pm) * eP[1]) + 4 * _EPS * abs(v))


def _xpp_constant(nu) -> complex:
    """``2 sin(2 nu pi) / ((2nu+1) pi)``, written as ``-2 sinc(2nu+1)``."""
    return -2.0 * _sinc(2.0 * complex(nu) + 1.0)


def _rhs_tricomi_xpp(p, tol):
    nu, x = p["nu"], p["x"]
    base = _rhs_tricomi_pp(p, tol)
    v = x * base.value - _xpp_constant(nu)
    v = _collapse(complex(v), nu)
    return SpecialValue(v, abs(x) * base.abs_err + 8 * _EPS * abs(v))


def _rhs_pp_int(p, tol):
    # 2 cos(nu pi)/(2nu+1) = pi sinc((2nu+1)/2)
    nu = p["nu"]
    v = _PI * _sinc(0.5 * (2.0 * complex(nu) + 1.0))
    return SpecialValue(_collapse(complex(v), nu), 8 * _EPS * abs(v))


def _rhs_pq_t(p, tol, weight=False):
    n, x = p["n"], p["x"]
    P, _, Q, _, eP, eQ = _legendre_values(float(n), x)
    v = (4.0 / _PI ** 2) * Q * Q - P * P
    err = 2 * ((4.0 / _PI ** 2) * abs(Q) * eQ[0] + abs(P) * eP[0]) + 4 * _EPS * abs(v)
    if weight:
        return SpecialValue(x * v.real, abs(x) * err)
    return SpecialValue(v.real, err)


def _rhs_neumann(p, tol):
    sv = legendre_q(float(p["n"]), p["x"], tol=None)
    return SpecialValue(complex(sv.value).real, sv.abs_err)


def _rhs_watson(p, tol):
    ie, ke, ei, ek = ik_scaled(p["nu"], p["y"])
    return SpecialValue(ie * ke, ei * ke + ek * ie)


def _rhs_weber(p, tol):
    mu, a, b = p["mu"], p["a"], p["b"]
    if a > b:
        return SpecialValue(b ** (mu - 1.0) / a ** mu, 4 * _EPS)
    return SpecialValue(0.0, 0.0)


def _rhs_prud(p, tol):
    b, c = p["b"], p["c"]
    if b < c:
        return SpecialValue(0.0, 0.0)
    return SpecialValue(-1.0 / (2.0 * _PI * b * c), 4 * _EPS)


def _rhs_sin2cot(p, tol):
    nu = complex(p["nu"])
    terms = [
        (3.0 * nu + 1.0) / (2.0 * _PI ** 2 * nu * (2.0 * nu + 1.0)),
    ]
    psi = [polygamma(0, z) for z in (2.0 * nu, nu + 0.5, nu + 1.0, nu + 1.5)]
    pv = [complex(s.value) for s in psi]
    terms.append((pv[0] + EULER_GAMMA + LOG2) / _PI ** 2)
    c2 = complex(cospi(2.0 * nu))
    terms.append(c2 / (4.0 * _PI ** 2) * (pv[1] - 2.0 * pv[2] + pv[3]))
    v = sum(terms)
    err = sum(s.abs_err for s in psi) / _PI ** 2 + 8 * _EPS * sum(abs(t) for t in terms)
    return SpecialValue(_collapse(v, p["nu"]), err)


def _rhs_a(p, tol):
    return a_right(p["nu"])


def _rhs_b(p, tol):
    return b_right(p["nu"])


# ------------------------------------------------------------ catalog

def _special_case(id_, side, nu, factor, factor_text, target, target_text, tol):
    fn = M.a_left if side == "A" else M.b_left
    integral = ("int_{-1}^1 x P_nu^4 dx" if side == "A"
                else "int_0^1 x P_nu^2 (P_nu^2 - P_nu(-x)^2) dx")
    return IdentitySpec(
        id=id_,
        description=f"{factor_text} * {integral} at nu = {nu[1]} equals {target_text}",
        param_domain="no parameters",
        params=(),
        lhs_kind="quad_finite",
        rhs_kind="constant",
        anchor=f"{target_text} = {factor_text} * {side}_L({nu[1]})",
        default_tol=tol,
        lhs=lambda p, t: _scaled(factor, fn(nu[0], t / abs(factor))),
        rhs=_const(target),
    )


def _no_params(id_, description, anchor, lhs, value, tol, lhs_kind):
    return IdentitySpec(id_, description, "no parameters", (), lhs_kind, "constant", anchor, tol,
                        lhs=lambda p, t: lhs(t), rhs=_const(value))


_PI4 = _PI ** 4
_PI2 = _PI ** 2
_LOG3 = math.log(3.0)

_ENTRIES = [
    IdentitySpec(
        "A", "int_{-1}^1 x P_nu(x)^4 dx against its polygamma closed form",
        "complex nu, |Im nu| <= 2, |Re nu| <= 60", ("nu",), "quad_finite", "closed_form",
        "2 sin^4(nu pi) [psi''(nu+1) + psi''(-nu) + 28 zeta(3)] / ((2nu+1)^2 pi^4)",
        TOL_QUARTIC, {"nu": 0.37}, _bounded_degree,
        lambda p, t: M.a_left(p["nu"], 0.1 * t), _rhs_a),
    IdentitySpec(
        "B", "int_0^1 x P_nu^2 (P_nu^2 - P_nu(-x)^2) dx against its digamma closed form",
        "complex nu, |Im nu| <= 2, |Re nu| <= 60", ("nu",), "quad_finite", "closed_form",
        "4 sin^2(nu pi) [(psi(nu+1) + psi(-nu))/2 + gamma + 2 log 2] / ((2nu+1)^2 pi^2)",
        TOL_B, {"nu": 0.37}, _bounded_degree,
        lambda p, t: M.b_left(p["nu"], 0.1 * t), _rhs_b),
    _special_case("SC_Z3_6", "A", (-1.0 / 6.0, "-1/6"), -2.0 * _PI4 / 189.0, "-2 pi^4/189",
                  ZETA3, "zeta(3)", TOL_QUARTIC),
    _special_case("SC_Z3_4", "A", (-0.25, "-1/4"), -_PI4 / 168.0, "-pi^4/168",
                  ZETA3, "zeta(3)", TOL_QUARTIC),
    _special_case("SC_Z3_3", "A", (-1.0 / 3.0, "-1/3"), -_PI4 / 243.0, "-pi^4/243",
                  ZETA3, "zeta(3)", TOL_QUARTIC),
    _special_case("SC_Z5", "A", (-0.5, "-1/2"), -_PI4 / 372.0, "-pi^4/372",
                  ZETA5, "zeta(5)", TOL_QUARTIC),
    _special_case("SC_LOG3", "B", (-1.0 / 6.0, "-1/6"), 8.0 * _PI2 / 9.0, "8 pi^2/9",
                  -3.0 * _LOG3, "-3 log 3", TOL_QUARTIC),
    _special_case("SC_LOG2", "B", (-0.25, "-1/4"), _PI2 / 8.0, "pi^2/8",
                  -LOG2, "-log 2", TOL_QUARTIC),
    _special_case("SC_LOG23", "B", (-1.0 / 3.0, "-1/3"), _PI2 / 27.0, "pi^2/27",
                  2.0 * LOG2 - 1.5 * _LOG3, "2 log 2 - (3/2) log 3", TOL_QUARTIC),
    _special_case("SC_Z3H", "B", (-0.5, "-1/2"), _PI2 / 7.0, "pi^2/7",
                  -ZETA3, "-zeta(3)", TOL_QUARTIC),
    IdentitySpec(
        "P3P", "(2nu+1)^2 int_{-1}^1 x P_nu(x)^3 P_nu(-x) dx = sin(2 nu pi) cos(nu pi)/pi",
        "complex nu, |Im nu| <= 2, |Re nu| <= 60", ("nu",), "quad_finite", "closed_form",
        "sin(2 nu pi) cos(nu pi) / pi", TOL_QUARTIC, {"nu": 0.3}, _bounded_degree,
        lambda p, t: M.p3p_left(p["nu"], 0.1 * t), _rhs_p3p),
    IdentitySpec(
        "PQQQ0", "int_{-1}^1 x P_n Q_n (4/pi^2 Q_n^2 - P_n^2) dx = 0",
        "integer 0 <= n <= 40", ("n",), "quad_finite", "constant",
        "moment of P_n Q_n (4/pi^2 Q_n^2 - P_n^2) vanishes", TOL_QUARTIC, {"n": 2}, _nonneg_n,
        lambda p, t: M.pqqq_left(p["n"], 0.1 * t), _const(0.0)),
    IdentitySpec(
        "TRICOMI_PP",
        "(2 sin(nu pi)/pi) PV int_{-1}^1 P_nu(xi) P_nu(-xi)/(x - xi) dxi = P_nu(x)^2 - P_nu(-x)^2",
        "complex nu (|Im nu| <= 2), |x| < 1 - 1e-6", ("nu", "x"), "quad_pv", "special_values",
        "P_nu(x)^2 - P_nu(-x)^2", TOL_POLY, {"nu": 0.3, "x": 0.3}, _all(_bounded_degree, _cut_x),
        lambda p, t: M.tricomi_pp_left(p["nu"], p["x"], 0.1 * t), _rhs_tricomi_pp),
    IdentitySpec(
        "TRICOMI_XPP",
        "(2 sin(nu pi)/pi) PV int_{-1}^1 xi P_nu(xi) P_nu(-xi)/(x - xi) dxi"
        " = x (P_nu(x)^2 - P_nu(-x)^2) - 2 sin(2 nu pi)/((2nu+1) pi)",
        "complex nu (|Im nu| <= 2), |x| < 1 - 1e-6", ("nu", "x"), "quad_pv", "special_values",
        "x [P_nu(x)^2 - P_nu(-x)^2] - 2 sin(2 nu pi)/((2nu+1) pi)", TOL_POLY,
        {"nu": 0.3, "x": 0.3}, _all(_bounded_degree, _cut_x),
        lambda p, t: M.tricomi_xpp_left(p["nu"], p["x"], 0.1 * t), _rhs_tricomi_xpp),
    IdentitySpec(
        "PP_INT", "int_{-1}^1 P_nu(x) P_nu(-x) dx = 2 cos(nu pi)/(2nu+1)",
        "complex nu, |Im nu| <= 2, |Re nu| <= 60", ("nu",), "quad_finite", "closed_form",
        "2 cos(nu pi) / (2nu+1)", TOL_POLY, {"nu": 0.25}, _bounded_degree,
        lambda p, t: M.pp_left(p["nu"], 0.1 * t), _rhs_pp_int),
    IdentitySpec(
        "PQ_T", "(4/pi^2) PV int_{-1}^1 P_n Q_n/(x - xi) dxi = (4/pi^2) Q_n(x)^2 - P_n(x)^2",
        "integer 0 <= n <= 40, |x| < 1 - 1e-6", ("n", "x"), "quad_pv", "special_values",
        "(4/pi^2) Q_n(x)^2 - P_n(x)^2", TOL_POLY, {"n": 2, "x": 0.3}, _all(_nonneg_n, _cut_x),
        lambda p, t: M.pq_t_left(p["n"], p["x"], 0.1 * t), _rhs_pq_t),
    IdentitySpec(
        "XPQ_T",
        "(4/pi^2) PV int_{-1}^1 xi P_n Q_n/(x - xi) dxi = x [(4/pi^2) Q_n(x)^2 - P_n(x)^2]",
        "integer 0 <= n <= 40, |x| < 1 - 1e-6", ("n", "x"), "quad_pv", "special_values",
        "x [(4/pi^2) Q_n(x)^2 - P_n(x)^2]", TOL_POLY, {"n": 1, "x": -0.7},
        _all(_nonneg_n, _cut_x),
        lambda p, t: M.xpq_t_left(p["n"], p["x"], 0.1 * t),
        lambda p, t: _rhs_pq_t(p, t, weight=True)),
    IdentitySpec(
        "NEUMANN", "(1/2) PV int_{-1}^1 P_n(xi)/(x - xi) dxi = Q_n(x)",
        "integer 0 <= n <= 40, |x| < 1 - 1e-6", ("n", "x"), "quad_pv", "special_values",
        "Q_n(x) = PV int P_n(xi) dxi / (2 (x - xi))", TOL_POLY, {"n": 3, "x": 0.3},
        _all(_nonneg_n, _cut_x),
        lambda p, t: M.neumann_left(p["n"], p["x"], 0.1 * t), _rhs_neumann),
    IdentitySpec(
        "PNQN0", "int_{-1}^1 P_n(x) Q_n(x) dx = 0",
        "integer 0 <= n <= 40", ("n",), "quad_finite", "constant",
        "int_{-1}^1 P_n Q_n dx = 0", TOL_POLY, {"n": 2}, _nonneg_n,
        lambda p, t: M.pnqn_left(p["n"], 0.1 * t), _const(0.0)),
    _no_params("JY3", "int_0^inf x J0(x) Y0(x)^3 dx = -1/(4 pi)",
               "x J0 Y0^3 moment = -1/(4 pi)", M.jy3_left, -1.0 / (4.0 * _PI), TOL_OSC, "quad_osc"),
    _no_params("J3Y", "int_0^inf x J0(x)^3 Y0(x) dx = -1/(4 pi)",
               "x J0^3 Y0 moment = -1/(4 pi)", M.j3y_left, -1.0 / (4.0 * _PI), TOL_OSC, "quad_osc"),
    _no_params("J4_3J2Y2", "int_0^inf x J0^2 (J0^2 - 3 Y0^2) dx = 0",
               "x J0^2 (J0^2 - 3 Y0^2) moment = 0", M.j4_3j2y2_left, 0.0, TOL_OSC, "quad_osc"),
    _no_params("J4_6J2Y2_Y4", "int_0^inf x (J0^4 - 6 J0^2 Y0^2 + Y0^4) dx = -14 zeta(3)/pi^4",
               "x (J0^4 - 6 J0^2 Y0^2 + Y0^4) moment = -14 zeta(3)/pi^4", M.j4_6j2y2_y4_left,
               -14.0 * ZETA3 / _PI4, TOL_OSC, "quad_osc"),
    _no_params("K04", "int_0^inf t K0(t)^4 dt = 7 zeta(3)/8",
               "t K0^4 moment = 7 zeta(3)/8", M.k04_left, 7.0 * ZETA3 / 8.0, TOL_K04,
               "quad_decaying"),
    _no_params("J2Y2_COS", "int_0^inf [x J0^2 (Y0^2 - J0^2) + (1 - cos 4x)/(pi^2 x)] dx = 0",
               "x J0^2 (Y0^2 - J0^2) + (1 - cos 4x)/(pi^2 x) integrates to 0", M.j2y2_cos_left,
               0.0, TOL_OSC, "quad_osc"),
    _no_params("IK_EXP", "int_0^inf [(1 - e^{-4y})/y - 4y I0(y)^2 K0(y)^2] dy = 0",
               "(1 - e^{-4y})/y - 4y I0^2 K0^2 integrates to 0", M.ik_exp_left, 0.0, TOL_IK_EXP,
               "quad_decaying"),
    IdentitySpec(
        "IIKK",
        "int_0^inf y [I_{nu-1/2} I_{nu+1/2} K_{nu-1/2} K_{nu+1/2} - I_nu^2 K_nu^2] dy = 0",
        "real -1/2 < nu <= 60", ("nu",), "quad_decaying", "constant",
        "y [I_{nu-1/2} I_{nu+1/2} K_{nu-1/2} K_{nu+1/2} - (I_nu K_nu)^2] integrates to 0",
        TOL_IIKK, {"nu": 1.0}, _real_degree(-0.5),
        lambda p, t: M.iikk_left(p["nu"], 0.1 * t), _const(0.0)),
    IdentitySpec(
        "WATSON_IK", "I_nu(y) K_nu(y) = int_0^{pi/2} J_{2nu}(2y tan phi) / cos phi dphi",
        "real 0 <= nu <= 60, y > 0", ("nu", "y"), "quad_osc", "special_values",
        "I_nu(y) K_nu(y) = int_0^{pi/2} J_{2nu}(2y tan phi) dphi / cos phi", TOL_OSC,
        {"nu": 0.5, "y": 1.0}, _all(_real_degree(0.0, strict=False), _positive("y")),
        lambda p, t: M.watson_left(p["nu"], p["y"], 0.1 * t), _rhs_watson),
    IdentitySpec(
        "WEBER", "int_0^inf J_mu(at) J_{mu-1}(bt) dt = b^{mu-1}/a^mu (a > b), 0 (a < b)",
        "real 1 <= mu <= 60; a, b > 0, a != b, a +- b commensurate", ("mu", "a", "b"),
        "quad_osc", "closed_form", "b^{mu-1}/a^mu for a > b > 0, 0 for 0 < a < b", TOL_OSC,
        {"mu": 1.5, "a": 2.0, "b": 1.0},
        _all(_weber_order, _positive("a", "b"), _distinct("a", "b"),
             _commensurate(lambda p: p["a"] + p["b"], lambda p: p["a"] - p["b"])),
        lambda p, t: M.weber_left(p["mu"], p["a"], p["b"], 0.1 * t), _rhs_weber),
    IdentitySpec(
        "PRUD", "int_0^inf x J_nu(bx)^2 J_nu(cx) Y_nu(cx) dx = 0 (b < c), -1/(2 pi b c) (c < b)",
        "real 0 <= nu <= 60; b, c > 0, b != c, commensurate", ("nu", "b", "c"), "quad_osc",
        "closed_form", "0 for 0 < b < c, -1/(2 pi b c) for 0 < c < b", TOL_OSC,
        {"nu": 0.5, "b": 1.0, "c": 2.0},
        _all(_real_degree(0.0, strict=False), _positive("b", "c"), _distinct("b", "c"),
             _commensurate(lambda p: 2.0 * p["b"], lambda p: 2.0 * p["c"])),
        lambda p, t: M.prud_left(p["nu"], p["b"], p["c"], 0.1 * t), _rhs_prud),
    IdentitySpec(
        "SIN2COT", "(2/pi^2) int_0^{pi/2} sin^2((2nu+1) theta) cot theta dtheta against digamma form",
        "complex nu, Re nu > 0, |Im nu| <= 2", ("nu",), "quad_finite", "closed_form",
        "(3nu+1)/(2 pi^2 nu (2nu+1)) + (psi(2nu) + gamma + log 2)/pi^2"
        " + cos(2 nu pi)/(4 pi^2) [psi(nu+1/2) - 2 psi(nu+1) + psi(nu+3/2)]",
        TOL_POLY, {"nu": 0.3},
        _all(_bounded_degree, _positive_real_degree),
        lambda p, t: M.sin2cot_left(p["nu"], 0.1 * t), _rhs_sin2cot),
]

CATALOG: dict[str, IdentitySpec] = {}
for _spec in _ENTRIES:
    if _spec.id in CATALOG:
        raise RuntimeError(f"duplicate identity id {_spec.id}")
    CATALOG[_spec.id] = _spec


def identity_ids() -> list[str]:
    return list(CATALOG)


def get_spec(id_: str) -> IdentitySpec:
    """Look up an entry; ids are case-insensitive."""
    key = str(id_).strip().upper()
    try:
        return CATALOG[key]
    except KeyError:
        raise UnknownIdentityError(f"unknown identity id {id_!r}") from None


def normalize_params(spec: IdentitySpec, params: dict | None) -> dict:
    """Fill defaults, convert types and enforce the domain of ``spec``."""
    params = dict(params or {})
    unknown = set(params) - set(spec.params)
    if unknown:
        raise DomainError(f"{spec.id} takes no parameter(s) {sorted(unknown)}; "
                          f"expected {list(spec.params) or 'none'}")
    out = {}
    for name in spec.params:
        if name in params and params[name] is not None:
            v = params[name]
        elif name in spec.defaults:
            v = spec.defaults[name]
        else:
            raise DomainError(f"{spec.id} needs parameter {name!r}")
        out[name] = _CONVERTERS[name](v, name)
    spec.check(out)
    return out
