"""Circular probability distributions and the operations the filter needs.

Wrapped normal (WN), von Mises (VM), and wrapped Dirac mixture (WD)
distributions on [0, 2pi), their trigonometric moments, moment matching
between families, mirroring/shifting, convolution, and the three strategies
for multiplying densities.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sps

from .errors import DegenerateMomentError, DegenerateProductError
from .special import TWO_PI, bessel_ratio_A, bessel_ratio_A_inv, gaussian_segment_moment

# moduli closer than this to 0 or 1 cannot be matched to a WN/VM
_MOMENT_EPS = 1e-14


def wrap(x):
    """Reduce angles into [0, 2pi) with floored modulo (arrays or scalars)."""
    return np.mod(x, TWO_PI)


@dataclass(frozen=True)
class WrappedNormal:
    """Wrapped normal density with location mu and concentration sigma > 0."""

    mu: float
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        object.__setattr__(self, "mu", float(wrap(self.mu)))
        object.__setattr__(self, "sigma", float(self.sigma))

    def pdf(self, x):
        x = wrap(np.asarray(x, dtype=float))
        # tails beyond |k| <= max(3, ceil(5 sigma / 2pi) + 1) are below 1e-12
        kmax = max(3, math.ceil(5.0 * self.sigma / TWO_PI) + 1)
        ks = np.arange(-kmax, kmax + 1)
        dev = x[..., None] - self.mu + TWO_PI * ks
        out = np.exp(-0.5 * (dev / self.sigma) ** 2).sum(axis=-1)
        out /= math.sqrt(TWO_PI) * self.sigma
        return out if out.ndim else float(out)

    def moment(self, n):
        if n < 1:
            raise ValueError("moment order must be >= 1")
        return complex(np.exp(1j * n * self.mu - n * n * self.sigma**2 / 2.0))

    def draw(self, rng, count):
        return wrap(rng.normal(self.mu, self.sigma, size=count))

    def sample(self, count, seed):
        if count < 1:
            raise ValueError("count must be >= 1")
        return self.draw(np.random.default_rng(seed), count)


@dataclass(frozen=True)
class VonMises:
    """Von Mises density with location mu and concentration kappa > 0."""

    mu: float
    kappa: float

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        object.__setattr__(self, "mu", float(wrap(self.mu)))
        object.__setattr__(self, "kappa", float(self.kappa))

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        # exp(kappa(cos(.)-1)) / (2pi ive(0,kappa)) avoids overflow at large kappa
        out = np.exp(self.kappa * (np.cos(x - self.mu) - 1.0))
        out /= TWO_PI * _sps.ive(0, self.kappa)
        return out if out.ndim else float(out)

    def moment(self, n):
        if n < 1:
            raise ValueError("moment order must be >= 1")
        ratio = _sps.ive(abs(n), self.kappa) / _sps.ive(0, self.kappa)
        return complex(np.exp(1j * n * self.mu) * ratio)

    def draw(self, rng, count):
        # numpy implements the Best-Fisher wrapped-Cauchy rejection sampler
        return wrap(rng.vonmises(self.mu, self.kappa, size=count))

    def sample(self, count, seed):
        if count < 1:
            raise ValueError("count must be >= 1")
        return self.draw(np.random.default_rng(seed), count)


@dataclass(frozen=True)
class WrappedDiracMixture:
    """Weighted Dirac components on the circle; weights sum to one."""

    weights: np.ndarray
    positions: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        p = wrap(np.asarray(self.positions, dtype=float))
        if w.ndim != 1 or w.shape != p.shape or w.size < 1:
            raise ValueError("weights and positions must be equal-length 1-d arrays")
        if np.any(w <= 0):
            raise ValueError("all weights must be positive")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {w.sum()}")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "positions", p)

    @classmethod
    def _unchecked(cls, weights, positions):
        # fast path for the deterministic samplers, which construct weights
        # and wrapped positions that satisfy the invariants by design
        self = object.__new__(cls)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "positions", positions)
        return self

    def moment(self, n):
        if n < 1:
            raise ValueError("moment order must be >= 1")
        return complex(np.sum(self.weights * np.exp(1j * n * self.positions)))


@dataclass(frozen=True)
class CircularMomentSet:
    """First (and optionally second) trigonometric moment of a circular density."""

    m1: complex
    m2: complex | None = None

    def __post_init__(self):
        if abs(self.m1) > 1.0 + 1e-12:
            raise ValueError(f"|m1| must be <= 1, got {abs(self.m1)}")
        if self.m2 is not None and abs(self.m2) > 1.0 + 1e-12:
            raise ValueError(f"|m2| must be <= 1, got {abs(self.m2)}")

    def moment(self, n):
        if n == 1:
            return self.m1
        if n == 2 and self.m2 is not None:
            return self.m2
        raise ValueError(f"moment of order {n} not stored")


def moments_of(d, orders=(1, 2)):
    """Collect a CircularMomentSet from any distribution carrying moments."""
    m1 = d.moment(1)
    m2 = d.moment(2) if 2 in orders else None
    return CircularMomentSet(m1, m2)


def _checked_modulus(m1):
    r = abs(m1)
    if r <= _MOMENT_EPS or r >= 1.0 - _MOMENT_EPS:
        raise DegenerateMomentError(f"|m1| = {r} admits no proper fit")
    return r


def wn_from_moment(m1):
    """Wrapped normal with the given first trigonometric moment."""
    r = _checked_modulus(m1)
    return WrappedNormal(math.atan2(m1.imag, m1.real), math.sqrt(-2.0 * math.log(r)))


def vm_from_moment(m1):
    """Von Mises with the given first trigonometric moment."""
    r = _checked_modulus(m1)
    return VonMises(math.atan2(m1.imag, m1.real), bessel_ratio_A_inv(r))


def wn_from_vm(d):
    """Wrapped normal sharing the first moment of the given von Mises."""
    return WrappedNormal(d.mu, math.sqrt(-2.0 * math.log(bessel_ratio_A(d.kappa))))


def vm_from_wn(d):
    """Von Mises sharing the first moment of the given wrapped normal."""
    return VonMises(d.mu, bessel_ratio_A_inv(math.exp(-d.sigma**2 / 2.0)))


def mirror_shift(d, c):
    """Density of x -> f(c - x); location moves to c - mu, concentration kept.

    This is the likelihood template f_noise(z - x) used in identity updates.
    """
    if isinstance(d, WrappedNormal):
        return WrappedNormal(wrap(c - d.mu), d.sigma)
    if isinstance(d, VonMises):
        return VonMises(wrap(c - d.mu), d.kappa)
    raise TypeError(f"mirror_shift expects WrappedNormal or VonMises, got {type(d)}")


def convolve_moments(a, b):
    """Moments of the sum of independent circular random variables."""
    m2 = None
    if a.m2 is not None and b.m2 is not None:
        m2 = a.m2 * b.m2
    return CircularMomentSet(a.m1 * b.m1, m2)


def wn_convolve(a, b):
    """Exact convolution of wrapped normals (closed under convolution)."""
    return WrappedNormal(wrap(a.mu + b.mu), math.hypot(a.sigma, b.sigma))


def vm_convolve(a, b):
    """Moment-matched convolution of von Mises densities (approximation)."""
    prod = bessel_ratio_A(a.kappa) * bessel_ratio_A(b.kappa)
    return VonMises(wrap(a.mu + b.mu), bessel_ratio_A_inv(prod))


def vm_multiply(a, b):
    """Renormalized pointwise product of von Mises densities (exact)."""
    vec = a.kappa * np.exp(1j * a.mu) + b.kappa * np.exp(1j * b.mu)
    kappa = abs(vec)
    if kappa <= _MOMENT_EPS:
        raise DegenerateProductError("antipodal von Mises factors cancel to uniform")
    return VonMises(math.atan2(vec.imag, vec.real), kappa)


def wn_multiply_via_vm(a, b):
    """Product of wrapped normals approximated through a von Mises detour.

    Converts both factors to VM, multiplies exactly, converts back.  The
    resulting first moment generally differs from the true product's.
    """
    return wn_from_vm(vm_multiply(vm_from_wn(a), vm_from_wn(b)))


def wn_product_moment(a, b, trunc=2):
    """First trigonometric moment of the renormalized WN product.

    Double sum over wrapping indices j, k in [-trunc, trunc] of the Gaussian
    product terms, each integrated over [0, 2pi) in closed form.
    """
    if trunc < 1:
        raise ValueError("trunc must be >= 1")
    v1, v2 = a.sigma**2, b.sigma**2
    vsum = v1 + v2
    sig_jk = math.sqrt(v1 * v2 / vsum)
    num = 0.0 + 0.0j
    den = 0.0 + 0.0j
    for j in range(-trunc, trunc + 1):
        mu1 = a.mu + TWO_PI * j
        for k in range(-trunc, trunc + 1):
            mu2 = b.mu + TWO_PI * k
            w = math.exp(-0.5 * (mu1 - mu2) ** 2 / vsum) / math.sqrt(TWO_PI * vsum)
            if w == 0.0:
                continue
            mu_jk = (mu1 * v2 + mu2 * v1) / vsum
            num += w * gaussian_segment_moment(mu_jk, sig_jk, 1)
            den += w * gaussian_segment_moment(mu_jk, sig_jk, 0)
    if abs(den) <= 0.0:
        raise DegenerateProductError("product of wrapped normals has no mass")
    return num / den


def wn_multiply_moment_based(a, b, trunc=2):
    """Product of wrapped normals fitted by matching the true first moment."""
    return wn_from_moment(wn_product_moment(a, b, trunc=trunc))
