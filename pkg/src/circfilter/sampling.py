"""Deterministic Dirac-mixture approximations of circular densities.

Three- and five-component wrapped Dirac mixtures that exactly preserve the
first (and, for five components, second) trigonometric moment, plus the
naive wrapped-Gaussian sigma-point placement kept only as a failure-mode
baseline.
"""

import math

import numpy as np

from .distributions import WrappedDiracMixture, WrappedNormal, wrap
from .errors import InfeasibleMomentsError

_CLAMP_TOL = 1e-12


def _clamped_arccos(x, what):
    if x > 1.0 or x < -1.0:
        if abs(x) > 1.0 + _CLAMP_TOL:
            raise InfeasibleMomentsError(f"{what} = {x} outside [-1, 1]")
        x = max(-1.0, min(1.0, x))
    return math.acos(x)


def sample_wd3(m1):
    """Three equally weighted Diracs matching the first trigonometric moment."""
    r = abs(m1)
    if r > 1.0 + _CLAMP_TOL:
        raise ValueError(f"|m1| must be <= 1, got {r}")
    r = min(r, 1.0)
    mu = math.atan2(m1.imag, m1.real)
    alpha = _clamped_arccos(1.5 * r - 0.5, "wd3 arccos argument")
    positions = wrap(np.array([mu - alpha, mu, mu + alpha]))
    return WrappedDiracMixture._unchecked(np.full(3, 1.0 / 3.0), positions)


def sample_wd5(m1, m2, lam=0.5, fallback_wd3=False):
    """Five Diracs matching the first two trigonometric moments.

    The center weight is gamma5 = gamma5_min + lam * (gamma5_max - gamma5_min)
    with lam in [0, 1]; the four outer components share the rest equally.
    Infeasible (m1, m2) pairs raise InfeasibleMomentsError unless
    ``fallback_wd3`` opts into a first-moment-only approximation.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lam must be in [0, 1], got {lam}")
    mu = math.atan2(m1.imag, m1.real)
    # the weight/position arithmetic runs on the moduli; the phase re-enters
    # only through the final shift by mu
    r1, r2 = abs(m1), abs(m2)
    try:
        den = 4.0 * r1 - r2 - 3.0
        if den == 0.0:
            raise InfeasibleMomentsError("degenerate weight denominator")
        g_min = (4.0 * r1 * r1 - 4.0 * r1 - r2 + 1.0) / den
        g_max = (2.0 * r1 * r1 - r2 - 1.0) / den
        g5 = g_min + lam * (g_max - g_min)
        if not 0.0 < g5 < 1.0:
            raise InfeasibleMomentsError(f"center weight {g5} outside (0, 1)")
        c1 = 2.0 * (r1 - g5) / (1.0 - g5)
        c2 = (r2 - g5) / (1.0 - g5) + 1.0
        disc = 4.0 * c1 * c1 - 8.0 * (c1 * c1 - c2)
        if disc < 0.0:
            if disc < -_CLAMP_TOL:
                raise InfeasibleMomentsError(f"negative discriminant {disc}")
            disc = 0.0
        x2 = (2.0 * c1 + math.sqrt(disc)) / 4.0
        x1 = c1 - x2
        phi1 = _clamped_arccos(x1, "wd5 outer position cosine")
        phi2 = _clamped_arccos(x2, "wd5 inner position cosine")
    except InfeasibleMomentsError:
        if fallback_wd3:
            return sample_wd3(m1)
        raise
    positions = wrap(mu + np.array([-phi1, phi1, -phi2, phi2, 0.0]))
    w_outer = (1.0 - g5) / 4.0
    weights = np.array([w_outer, w_outer, w_outer, w_outer, g5])
    return WrappedDiracMixture._unchecked(weights, positions)


def sample_from_density(d, scheme="wd5", lam=0.5, fallback_wd3=False):
    """Deterministically sample a density (or stored moment set) as a WD."""
    if scheme == "wd3":
        return sample_wd3(d.moment(1))
    if scheme == "wd5":
        return sample_wd5(d.moment(1), d.moment(2), lam=lam, fallback_wd3=fallback_wd3)
    raise ValueError(f"unknown sampling scheme {scheme!r}")


def naive_wrapped_gaussian_samples(d, scheme="ukf3"):
    """Wrap the three standard unscented points of the unwrapped Gaussian.

    Comparison baseline only: for large sigma the points wrap onto each other
    and badly misrepresent the density.
    """
    if scheme != "ukf3":
        raise ValueError(f"unknown scheme {scheme!r}")
    if not isinstance(d, WrappedNormal):
        raise TypeError("naive sampling is defined for wrapped normals")
    spread = math.sqrt(2.0) * d.sigma
    positions = wrap(np.array([d.mu, d.mu - spread, d.mu + spread]))
    return WrappedDiracMixture(np.array([0.5, 0.25, 0.25]), positions)


__all__ = [
    "sample_wd3",
    "sample_wd5",
    "sample_from_density",
    "naive_wrapped_gaussian_samples",
]
