"""Desk-scale evaluation experiments with CSV emission.

Three experiments: propagation accuracy of the deterministic samplers
through a nonlinear map, comparison of the two wrapped-normal multiplication
approximations, and the Monte Carlo filtering benchmark.
"""

import csv

import numpy as np

from .distributions import (
    WrappedNormal,
    wn_from_moment,
    wn_multiply_moment_based,
    wn_multiply_via_vm,
    wrap,
)
from .errors import DegenerateMomentError, DegenerateProductError
from .sampling import naive_wrapped_gaussian_samples, sample_from_density
from .scenarios import run_scenario
from .special import TWO_PI

PROPAGATION_SIGMAS = (0.5, 1.0, 1.5)
PROPAGATION_SAMPLERS = ("wd3", "wd5", "naive")
MULTIPLICATION_SIGMA1 = (0.1, 0.4, 1.0)
MULTIPLICATION_SIGMA2 = (0.2, 0.5, 1.0)
MULTIPLICATION_MU1 = 2.0

_QUAD_N = 2**14


def _quad_grid(n=_QUAD_N):
    step = TWO_PI / n
    return (np.arange(n) + 0.5) * step, step


def propagation_true_moment(prior, g, n, grid=None):
    """n-th moment of the pushforward of ``prior`` through ``g`` by quadrature."""
    xs, step = grid if grid is not None else _quad_grid()
    return complex(np.sum(np.exp(1j * n * g(xs)) * prior.pdf(xs)) * step)


def run_propagation_experiment(c_grid, sigma_set=PROPAGATION_SIGMAS,
                               samplers=PROPAGATION_SAMPLERS, lam=0.5):
    """Moment errors and KLD of sampled propagation through g(x) = x + c sin x."""
    grid = _quad_grid()
    xs, step = grid
    rows = []
    for sigma in sigma_set:
        prior = WrappedNormal(0.0, sigma)
        prior_pdf = prior.pdf(xs)
        for c in c_grid:
            def g(x, c=c):
                return wrap(x + c * np.sin(x))
            gprime = 1.0 + c * np.cos(xs)
            m_true = [propagation_true_moment(prior, g, n, grid) for n in (1, 2)]
            for sampler in samplers:
                if sampler == "naive":
                    wd = naive_wrapped_gaussian_samples(prior)
                else:
                    wd = sample_from_density(prior, scheme=sampler, lam=lam)
                pushed = g(wd.positions)
                m_wd = [complex(np.sum(wd.weights * np.exp(1j * n * pushed)))
                        for n in (1, 2)]
                # KLD(true || fitted WN) integrated over the prior variable:
                # f_true(g(t)) = f_prior(t) / g'(t) since g is increasing
                try:
                    fitted = wn_from_moment(m_wd[0])
                    fit_pdf = fitted.pdf(g(xs))
                    kld = float(np.sum(
                        prior_pdf * np.log(prior_pdf / (gprime * fit_pdf))) * step)
                except DegenerateMomentError:
                    kld = float("nan")
                rows.append({
                    "c": c,
                    "sigma": sigma,
                    "sampler": sampler,
                    "m1_error": abs(m_wd[0] - m_true[0]),
                    "m2_error": abs(m_wd[1] - m_true[1]),
                    "kld": kld,
                })
    return rows


def run_multiplication_experiment(sigma1_set=MULTIPLICATION_SIGMA1,
                                  sigma2_set=MULTIPLICATION_SIGMA2,
                                  mu_delta_grid=None, mu1=MULTIPLICATION_MU1):
    """KLD and L2 of both WN multiplication approximations on a parameter grid."""
    if mu_delta_grid is None:
        mu_delta_grid = np.linspace(0.0, TWO_PI, 32, endpoint=False)
    xs, step = _quad_grid()
    rows = []
    for sigma1 in sigma1_set:
        f1 = WrappedNormal(mu1, sigma1)
        pdf1 = f1.pdf(xs)
        for sigma2 in sigma2_set:
            for delta in mu_delta_grid:
                f2 = WrappedNormal(mu1 + delta, sigma2)
                raw = pdf1 * f2.pdf(xs)
                mass = raw.sum() * step
                true_pdf = raw / mass
                for method, op in (("moment", wn_multiply_moment_based),
                                   ("via_vm", wn_multiply_via_vm)):
                    row = {"sigma1": sigma1, "sigma2": sigma2,
                           "mu_delta": float(delta), "method": method,
                           "kld": float("nan"), "l2": float("nan"),
                           "degenerate": False}
                    try:
                        fitted = op(f1, f2)
                        fit_pdf = fitted.pdf(xs)
                        row["kld"] = float(np.sum(true_pdf
                                                  * np.log(true_pdf / fit_pdf)) * step)
                        row["l2"] = float(np.sum((true_pdf - fit_pdf) ** 2) * step)
                    except (DegenerateMomentError, DegenerateProductError):
                        row["degenerate"] = True
                    rows.append(row)
    return rows


def run_filtering_experiment(config, filters=None, trace=None):
    """Per-run angular RMSE rows for the requested filters on one scenario."""
    rows = []
    for result in run_scenario(config, filter_ids=filters, trace=trace):
        rows.append({
            "scenario": config.name,
            "filter": result.filter_id,
            "run": result.run,
            "rmse": result.rmse,
            "degeneracies": result.degeneracies,
            "seconds": result.seconds,
        })
    return rows


def write_csv(rows, path):
    """Write experiment rows as plain CSV with a single header row."""
    if not rows:
        raise ValueError("no rows to write")
    fieldnames = list(rows[0].keys())
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)
