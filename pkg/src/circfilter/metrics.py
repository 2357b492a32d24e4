"""Angular error measures and quadrature-based density distances."""

import numpy as np

from .special import TWO_PI


def angular_distance(a, b):
    """Shortest arc length between two angles, in [0, pi]."""
    diff = np.abs(np.mod(a, TWO_PI) - np.mod(b, TWO_PI))
    d = np.minimum(diff, TWO_PI - diff)
    return d if np.ndim(d) else float(d)


def angular_rmse(estimates, truths):
    """Root mean square of shortest-arc distances."""
    estimates = np.asarray(estimates, dtype=float)
    truths = np.asarray(truths, dtype=float)
    if estimates.shape != truths.shape or estimates.size < 1:
        raise ValueError("estimates and truths must be equal-length and nonempty")
    return float(np.sqrt(np.mean(angular_distance(estimates, truths) ** 2)))


def _grid(n):
    step = TWO_PI / n
    return (np.arange(n) + 0.5) * step, step


def numeric_kld(f_true, f_fit, n=2**14):
    """Kullback-Leibler divergence of two circular pdfs by composite quadrature."""
    xs, step = _grid(n)
    ft = np.asarray(f_true(xs), dtype=float)
    ff = np.asarray(f_fit(xs), dtype=float)
    if np.any(ft <= 0.0) or np.any(ff <= 0.0):
        raise ValueError("pdfs must be strictly positive on the quadrature grid")
    return float(np.sum(ft * np.log(ft / ff)) * step)


def numeric_l2(f_true, f_fit, n=2**14):
    """Squared-difference integral of two circular pdfs by composite quadrature."""
    xs, step = _grid(n)
    ft = np.asarray(f_true(xs), dtype=float)
    ff = np.asarray(f_fit(xs), dtype=float)
    return float(np.sum((ft - ff) ** 2) * step)
