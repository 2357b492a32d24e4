"""Scalar special functions used throughout the library.

Modified Bessel functions of the first kind, the concentration ratio
A(x) = I1(x)/I0(x) together with its inverse, the error function of complex
argument, and closed-form trigonometric moments of a Gaussian restricted to
[0, 2pi).
"""

import math

import numpy as np
from scipy import special as _sps

TWO_PI = 2.0 * math.pi

_SQRT2 = math.sqrt(2.0)

# erf_complex is only guaranteed in this box; larger arguments are handled
# internally by gaussian_segment_moment where erf saturates to +-1.
ERF_WORKING_RANGE = 30.0


def bessel_i(order, x):
    """Modified Bessel function of the first kind I_order(x) for x >= 0."""
    if order < 0 or order != int(order):
        raise ValueError(f"order must be a nonnegative integer, got {order}")
    if x < 0:
        raise ValueError(f"bessel_i requires x >= 0, got {x}")
    return float(_sps.iv(order, x))


def bessel_ratio_A(x):
    """Concentration ratio A(x) = I1(x)/I0(x), strictly increasing on [0, inf)."""
    if x < 0:
        raise ValueError(f"bessel_ratio_A requires x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    # exponentially scaled quotient stays finite for arbitrarily large x
    return float(_sps.ive(1, x) / _sps.ive(0, x))


def _bessel_ratio_A_deriv(x, a):
    # A'(x) = 1 - A(x)/x - A(x)^2; the x->0 limit is 1/2
    if x < 1e-8:
        return 0.5
    return 1.0 - a / x - a * a


def _kappa_initial_guess(y):
    # classic piecewise approximation (Mardia & Jupp), refined by Newton below
    if y < 0.53:
        return 2.0 * y + y**3 + 5.0 * y**5 / 6.0
    if y < 0.85:
        return -0.4 + 1.39 * y + 0.43 / (1.0 - y)
    return 1.0 / (y**3 - 4.0 * y**2 + 3.0 * y)


def bessel_ratio_A_inv(y, tol=1e-12, max_iter=100):
    """Invert A(x) = I1(x)/I0(x): return kappa >= 0 with A(kappa) ~= y.

    Safeguarded Newton iteration with a bisection fallback; the residual
    |A(kappa) - y| is driven below ``tol``.
    """
    if y < 0.0 or y >= 1.0 - 1e-14:
        raise ValueError(f"bessel_ratio_A_inv requires 0 <= y < 1 - 1e-14, got {y}")
    if y == 0.0:
        return 0.0
    lo, hi = 0.0, max(1e6, 2.0 / (1.0 - y))
    kappa = min(max(_kappa_initial_guess(y), lo), hi)
    for _ in range(max_iter):
        a = bessel_ratio_A(kappa)
        resid = a - y
        if resid > 0.0:
            hi = kappa
        else:
            lo = kappa
        deriv = _bessel_ratio_A_deriv(kappa, a)
        step_ok = deriv > 0.0
        if step_ok:
            candidate = kappa - resid / deriv
            step_ok = lo < candidate < hi
        nxt = candidate if step_ok else 0.5 * (lo + hi)
        if abs(resid) <= tol and abs(nxt - kappa) <= 1e-12 * max(1.0, kappa):
            return kappa
        kappa = nxt
    return kappa


def erf_complex(z):
    """Error function of a complex argument within the documented working box."""
    z = complex(z)
    if abs(z.real) > ERF_WORKING_RANGE or abs(z.imag) > ERF_WORKING_RANGE:
        raise ValueError(f"erf_complex argument {z} outside working range "
                         f"|Re|,|Im| <= {ERF_WORKING_RANGE}")
    return complex(_sps.erf(z))


def gaussian_segment_moment(mu, sigma, n):
    """Trigonometric moment of a real Gaussian restricted to [0, 2pi).

    Returns int_0^{2pi} exp(i*n*x) N(x; mu, sigma) dx for n in {0, 1},
    evaluated in closed form through (complex) error functions.
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if n not in (0, 1):
        raise ValueError(f"n must be 0 or 1, got {n}")
    denom = _SQRT2 * sigma
    if n == 0:
        val = 0.5 * (_sps.erf(mu / denom) - _sps.erf((mu - TWO_PI) / denom))
        return complex(val)
    shift = 1j * sigma * sigma
    bracket = _sps.erf((mu + shift) / denom) - _sps.erf((mu - TWO_PI + shift) / denom)
    return complex(0.5 * np.exp(1j * mu - sigma * sigma / 2.0) * bracket)
