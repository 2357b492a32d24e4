"""Recursive circular filter: prediction and measurement update steps.

Every step is a pure function mapping a state (wrapped normal, von Mises, or
a bare moment set) to a new state of the same kind.  Prediction supports
identity, nonlinear-additive, and arbitrary-noise system models; updates
cover the identity model in closed form and general likelihoods through the
progressive reweighing scheme.
"""

import math

import numpy as np

from .distributions import (
    CircularMomentSet,
    VonMises,
    WrappedDiracMixture,
    WrappedNormal,
    convolve_moments,
    mirror_shift,
    moments_of,
    vm_convolve,
    vm_from_moment,
    vm_multiply,
    wn_convolve,
    wn_from_moment,
    wn_multiply_moment_based,
    wrap,
)
from .errors import ProgressionStallError, ZeroLikelihoodError
from .sampling import sample_from_density

FilterState = WrappedNormal | VonMises | CircularMomentSet

_CIRCULAR = (WrappedNormal, VonMises, WrappedDiracMixture)


def _fit_like(state, m1, m2=None):
    """Fit the propagated moments back into the representation of ``state``."""
    if isinstance(state, WrappedNormal):
        return wn_from_moment(m1)
    if isinstance(state, VonMises):
        return vm_from_moment(m1)
    return CircularMomentSet(m1, m2)


def predict_identity(s, noise):
    """Prediction through x_{k+1} = x_k + w_k: convolve estimate and noise."""
    if isinstance(s, WrappedNormal) and isinstance(noise, WrappedNormal):
        return wn_convolve(s, noise)
    if isinstance(s, VonMises):
        noise_vm = noise if isinstance(noise, VonMises) else None
        if noise_vm is not None:
            return vm_convolve(s, noise_vm)
    a = s if isinstance(s, CircularMomentSet) else moments_of(s)
    b = noise if isinstance(noise, CircularMomentSet) else moments_of(noise)
    out = convolve_moments(a, b)
    if isinstance(s, CircularMomentSet):
        return out
    return _fit_like(s, out.m1)


def predict_nonlinear_additive(s, a, noise, scheme="wd5", lam=0.5):
    """Prediction through x_{k+1} = a(x_k) + w_k with circular noise.

    The prior is sampled deterministically, pushed through ``a``
    componentwise, moment-matched, and convolved with the noise density.
    """
    wd = sample_from_density(s, scheme=scheme, lam=lam)
    pushed = wrap(a(wd.positions))
    m1 = complex(np.sum(wd.weights * np.exp(1j * pushed)))
    m2 = complex(np.sum(wd.weights * np.exp(2j * pushed)))
    propagated = _fit_like(s, m1, m2)
    return predict_identity(propagated, noise)


def predict_arbitrary(s, a, noise, scheme="wd5", noise_scheme="wd5", lam=0.5):
    """Prediction through x_{k+1} = a(x_k, w_k) with arbitrary noise.

    ``noise`` may be a circular density (sampled with ``noise_scheme``) or an
    externally supplied WrappedDiracMixture/weighted discrete set when the
    noise space is not circular.
    """
    wd = sample_from_density(s, scheme=scheme, lam=lam)
    if isinstance(noise, WrappedDiracMixture):
        wd_noise = noise
    elif noise_scheme == "external":
        raise TypeError("external noise scheme requires a WrappedDiracMixture")
    else:
        wd_noise = sample_from_density(noise, scheme=noise_scheme, lam=lam)
    # Cartesian product of state and noise samples, propagated componentwise
    bj = wd.positions[:, None]
    bl = wd_noise.positions[None, :]
    pushed = wrap(a(bj, bl)).ravel()
    weights = (wd.weights[:, None] * wd_noise.weights[None, :]).ravel()
    m1 = complex(np.sum(weights * np.exp(1j * pushed)))
    m2 = complex(np.sum(weights * np.exp(2j * pushed)))
    return _fit_like(s, m1, m2)


def update_identity(s, z, noise):
    """Bayes update for z = x + v: multiply the prior with f_v(z - x)."""
    shifted = mirror_shift(noise, z)
    if isinstance(s, VonMises):
        return vm_multiply(s, shifted)
    if isinstance(s, WrappedNormal):
        return wn_multiply_moment_based(s, shifted)
    raise TypeError(f"update_identity expects a WN or VM state, got {type(s)}")


def make_additive_likelihood(h, noise):
    """Likelihood (z, x) -> f_v(z - h(x)) for an additive measurement model.

    ``noise`` is either a circular distribution (the residual is wrapped) or
    any object whose ``pdf`` accepts residual vectors, e.g. a Gaussian on R^n
    evaluated over the trailing axis.
    """
    if isinstance(noise, _CIRCULAR):
        def likelihood(z, x):
            return noise.pdf(wrap(z - h(x)))
    else:
        def likelihood(z, x):
            return noise.pdf(z - h(x))
    return likelihood


def update_progressive(s, z, likelihood, R=0.2, scheme="wd5", lam=0.5,
                       max_steps=1000, trace=None):
    """Progressive Bayes update splitting the likelihood into partial powers.

    Each step reweighs a deterministic sample set by likelihood**lambda_s with
    lambda_s chosen so the post-reweigh min/max weight ratio stays >= R, then
    moment-matches back to the state family.  Steps continue until the
    lambdas sum to one.  ``trace``, if given, is a list collecting per-step
    (lambda_s, weight_ratio) tuples.
    """
    if not 0.0 < R < 1.0:
        raise ValueError(f"R must lie in (0, 1), got {R}")
    if not isinstance(s, (WrappedNormal, VonMises)):
        raise TypeError("progressive update requires a WN or VM state")
    est = s
    remaining = 1.0
    for _ in range(max_steps):
        wd = sample_from_density(est, scheme=scheme, lam=lam)
        # scalar arithmetic below: the sample sets have 3-5 components, where
        # plain floats beat numpy reductions by an order of magnitude
        w = wd.weights.tolist()
        if min(w) / max(w) < 1.1 * R:
            # the sampler's own weight ratio violates R or sits so close to it
            # that the admissible step size collapses; equal weights keep the
            # progression moving
            wd = sample_from_density(est, scheme="wd3")
            w = wd.weights.tolist()
        lik = likelihood(z, wd.positions)
        loglik = [math.log(v) if v > 0.0 else -math.inf for v in lik]
        ll_max = max(loglik)
        if ll_max == -math.inf:
            raise ZeroLikelihoodError("likelihood vanished at every sample position")
        spread = min(loglik) - ll_max
        if spread == 0.0:
            step = remaining
        else:
            bound = math.log(R * max(w) / min(w)) / spread
            if bound <= 0.0 or not math.isfinite(bound):
                raise ProgressionStallError(f"non-positive step size {bound}")
            step = min(remaining, bound)
        new_w = [wi * math.exp(step * (li - ll_max)) for wi, li in zip(w, loglik)]
        total = sum(new_w)
        if total <= 0.0:
            raise ZeroLikelihoodError("reweighed weights vanished")
        new_w = [wi / total for wi in new_w]
        if trace is not None:
            trace.append((step, min(new_w) / max(new_w)))
        m1 = complex(np.dot(new_w, np.exp(1j * wd.positions)))
        est = _fit_like(est, m1)
        remaining -= step
        if remaining <= 1e-14:
            return est
    raise ProgressionStallError(f"progression did not finish in {max_steps} steps")
