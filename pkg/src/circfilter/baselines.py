"""Comparison filters: wrapped 1D UKF, constrained 2D UKF, and a SIR particle filter."""

import math
from dataclasses import dataclass

import numpy as np

from .distributions import wrap
from .errors import ParticleDegeneracyError
from .special import TWO_PI

# symmetric 2n+1 sigma points with kappa-style spread parameter 1
_UT_KAPPA = 1.0


@dataclass(frozen=True)
class GaussianState:
    """Mean and covariance of a (possibly constrained) Gaussian filter state."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.atleast_1d(np.asarray(self.mean, dtype=float))
        cov = np.atleast_2d(np.asarray(self.cov, dtype=float))
        if cov.shape != (mean.size, mean.size):
            raise ValueError("covariance shape does not match mean")
        if np.max(np.abs(cov - cov.T)) > 1e-12:
            raise ValueError("covariance must be symmetric")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)


def _sigma_points(state):
    n = state.mean.size
    scale = n + _UT_KAPPA
    cov = state.cov + 1e-12 * np.eye(n)
    try:
        root = np.linalg.cholesky(scale * cov)
    except np.linalg.LinAlgError as exc:
        raise ValueError("covariance not positive definite") from exc
    pts = [state.mean]
    for i in range(n):
        pts.append(state.mean + root[:, i])
        pts.append(state.mean - root[:, i])
    weights = np.full(2 * n + 1, 1.0 / (2.0 * scale))
    weights[0] = _UT_KAPPA / scale
    return np.array(pts), weights


def _unscented_transform(points, weights, fn):
    mapped = np.array([np.atleast_1d(fn(p)) for p in points], dtype=float)
    mean = weights @ mapped
    dev = mapped - mean
    cov = (weights[:, None] * dev).T @ dev
    return mean, cov, mapped, dev


def reposition_measurement(z, predicted):
    """Shift a circular measurement by 2*pi*k to within pi of the prediction."""
    return predicted + wrap(z - predicted + math.pi) - math.pi


def ukf1d_predict(s, a, noise_var):
    """1D unscented prediction; the mean is wrapped back into [0, 2pi)."""
    pts, w = _sigma_points(s)
    mean, cov, _, _ = _unscented_transform(pts, w, lambda p: a(p[0]))
    cov = cov + noise_var
    return GaussianState(wrap(mean), cov)


def ukf1d_update(s, z, h, meas_cov, circular_measurement=False):
    """1D unscented update; circular measurements are repositioned first."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    pts, w = _sigma_points(s)
    z_mean, z_cov, _, z_dev = _unscented_transform(pts, w, lambda p: h(p[0]))
    if circular_measurement:
        z = np.atleast_1d(reposition_measurement(z, z_mean))
    z_cov = z_cov + np.atleast_2d(meas_cov)
    x_dev = pts - s.mean
    pxz = (w[:, None] * x_dev).T @ z_dev
    gain = pxz @ np.linalg.inv(z_cov)
    mean = s.mean + gain @ (z - z_mean)
    cov = s.cov - gain @ z_cov @ gain.T
    cov = 0.5 * (cov + cov.T)
    return GaussianState(wrap(mean), cov)


def _project_to_circle(state):
    norm = float(np.linalg.norm(state.mean))
    if norm < 1e-12:
        raise ValueError("2D state mean at the origin: projection undefined")
    return GaussianState(state.mean / norm, state.cov)


def ukf2d_predict(s, a, noise_cov):
    """Unscented prediction of the embedded [cos, sin] state, then projection."""
    pts, w = _sigma_points(s)
    mean, cov, _, _ = _unscented_transform(pts, w, a)
    cov = cov + np.atleast_2d(noise_cov)
    return _project_to_circle(GaussianState(mean, cov))


def ukf2d_update(s, z, h, meas_cov):
    """Unscented update of the embedded state followed by projection."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    pts, w = _sigma_points(s)
    z_mean, z_cov, _, z_dev = _unscented_transform(pts, w, h)
    z_cov = z_cov + np.atleast_2d(meas_cov)
    x_dev = pts - s.mean
    pxz = (w[:, None] * x_dev).T @ z_dev
    gain = pxz @ np.linalg.inv(z_cov)
    mean = s.mean + gain @ (z - z_mean)
    cov = s.cov - gain @ z_cov @ gain.T
    cov = 0.5 * (cov + cov.T)
    return _project_to_circle(GaussianState(mean, cov))


@dataclass(frozen=True)
class ParticleSet:
    """Angular particles with normalized importance weights."""

    particles: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        p = wrap(np.asarray(self.particles, dtype=float))
        w = np.asarray(self.weights, dtype=float)
        if p.size < 1 or p.shape != w.shape:
            raise ValueError("particles and weights must be equal-length, nonempty")
        if abs(w.sum() - 1.0) > 1e-9:
            raise ValueError("weights must be normalized")
        object.__setattr__(self, "particles", p)
        object.__setattr__(self, "weights", w)

    def mean_direction(self):
        m = np.sum(self.weights * np.exp(1j * self.particles))
        return float(wrap(math.atan2(m.imag, m.real)))


def uniform_particles(positions):
    positions = np.asarray(positions, dtype=float)
    return ParticleSet(positions, np.full(positions.size, 1.0 / positions.size))


def pf_predict(p, a, noise, rng):
    """Propagate every particle with an independent noise draw."""
    w = noise.draw(rng, p.particles.size)
    return ParticleSet(wrap(a(p.particles, w)), p.weights)


def systematic_resample(weights, rng):
    """Systematic (low-variance) resampling; returns selected indices."""
    n = weights.size
    positions = (rng.uniform() + np.arange(n)) / n
    return np.searchsorted(np.cumsum(weights), positions)


def pf_update(p, likelihood, z, rng):
    """Reweigh by the likelihood, renormalize, and resample systematically."""
    w = p.weights * np.asarray(likelihood(z, p.particles), dtype=float)
    total = w.sum()
    if not total > 0.0 or not np.isfinite(total):
        raise ParticleDegeneracyError("all particle weights vanished")
    idx = systematic_resample(w / total, rng)
    return uniform_particles(p.particles[idx])
