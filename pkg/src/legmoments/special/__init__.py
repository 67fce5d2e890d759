"""Special functions of real and complex parameter."""
from .bessel import (asymptotic_crossover, bessel_cyl, bessel_i, bessel_j, bessel_k, bessel_mod,
                     bessel_y, ik_scaled, jy)
from .core import (EULER_GAMMA, LOG2, ZETA3, ZETA5, BesselOrder, Degree, SpecialValue, cospi,
                   sinpi)
from .legendre import (LegendrePair, legendre_nu_derivative, legendre_p, legendre_p_md,
                       legendre_pair, legendre_poly, legendre_pq, legendre_q, legendre_q_neumann,
                       nu_derivative_tableau)
from .polygamma import digamma, polygamma, tetragamma, trigamma

__all__ = [
    "EULER_GAMMA", "LOG2", "ZETA3", "ZETA5", "BesselOrder", "Degree", "SpecialValue", "cospi",
    "sinpi", "polygamma", "digamma", "trigamma", "tetragamma", "asymptotic_crossover", "jy",
    "bessel_j", "bessel_y", "ik_scaled", "bessel_i", "bessel_k", "bessel_cyl", "bessel_mod",
    "LegendrePair", "legendre_pair", "legendre_pq", "legendre_p", "legendre_q", "legendre_p_md",
    "legendre_poly", "legendre_q_neumann", "nu_derivative_tableau", "legendre_nu_derivative",
]
