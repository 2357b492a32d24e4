"""Benchmark scenario definitions and the Monte Carlo filtering engine.

Six named scenarios pair the nonlinear system function (additive or
non-additive phase noise) with a small/medium/large measurement noise scale.
Each run simulates ground truth and 2D measurements, then replays them
through the circular filter and the baseline filters.
"""

import json
import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import baselines, filters
from .distributions import WrappedNormal, wrap
from .errors import ParticleDegeneracyError
from .metrics import angular_distance, angular_rmse
from .special import TWO_PI

ADDITIVE_SCENARIOS = ("s", "m", "l")
NON_ADDITIVE_SCENARIOS = ("s-non-additive", "m-non-additive", "l-non-additive")
SCENARIO_NAMES = ADDITIVE_SCENARIOS + NON_ADDITIVE_SCENARIOS

_ETA_BY_SIZE = {"s": 0.01, "m": 0.1, "l": 3.0}

ADDITIVE_FILTERS = ("circular", "ukf1d", "ukf2d", "pf10", "pf100")
NON_ADDITIVE_FILTERS = ("circular", "pf10", "pf100")


@dataclass(frozen=True)
class IsotropicGaussianNoise:
    """Zero-mean Gaussian on R^dim with covariance eta * I."""

    dim: int
    eta: float

    def pdf(self, residual):
        residual = np.asarray(residual, dtype=float)
        sq = np.sum(residual * residual, axis=-1)
        return np.exp(-0.5 * sq / self.eta) / (TWO_PI * self.eta) ** (self.dim / 2.0)

    def draw(self, rng, count):
        return rng.normal(0.0, math.sqrt(self.eta), size=(count, self.dim))


@dataclass(frozen=True)
class ScenarioConfig:
    """Constants of one filtering benchmark scenario."""

    name: str
    arbitrary_noise: bool
    eta: float
    c1: float = 0.1
    c2: float = 0.15
    system_noise_mu: float = 0.0
    system_noise_sigma: float = 0.2
    k_max: int = 100
    runs: int = 100
    init_mu: float = 0.0
    init_sigma: float = 1.0
    true_init: float = math.pi
    progression_threshold: float = 0.2
    sampling_lambda: float = 0.5
    seed: int = 2014

    def system_noise(self):
        return WrappedNormal(self.system_noise_mu, self.system_noise_sigma)

    def init_estimate(self):
        return WrappedNormal(self.init_mu, self.init_sigma)

    def system_fn_additive(self):
        c1, c2 = self.c1, self.c2
        return lambda x: x + c1 * np.sin(x) + c2

    def system_fn_arbitrary(self):
        c1, c2 = self.c1, self.c2
        return lambda x, w: x + c1 * np.sin(x + w) + c2

    def measurement_fn(self):
        def h(x):
            x = np.asarray(x, dtype=float)
            out = np.empty(x.shape + (2,))
            out[..., 0] = np.cos(x)
            out[..., 1] = np.sin(x)
            return out
        return h

    def default_filters(self):
        return NON_ADDITIVE_FILTERS if self.arbitrary_noise else ADDITIVE_FILTERS


def scenario_config(name, **overrides):
    """Built-in scenario by name; keyword overrides replace individual fields."""
    if name not in SCENARIO_NAMES:
        raise ValueError(f"unknown scenario {name!r}; choose from {SCENARIO_NAMES}")
    size = name.split("-")[0]
    cfg = ScenarioConfig(name=name,
                         arbitrary_noise=name.endswith("non-additive"),
                         eta=_ETA_BY_SIZE[size])
    return replace(cfg, **overrides) if overrides else cfg


def scenario_from_json(path, **overrides):
    """Load a ScenarioConfig from a JSON file mirroring its field names."""
    with open(path) as fh:
        data = json.load(fh)
    data.update(overrides)
    name = data.pop("name")
    if name in SCENARIO_NAMES:
        return scenario_config(name, **data)
    return ScenarioConfig(name=name, **data)


@dataclass
class RunResult:
    """Per-run record of one filter's performance."""

    filter_id: str
    run: int
    errors: list[float] = field(default_factory=list)
    rmse: float = float("nan")
    degeneracies: int = 0
    seconds: float = 0.0


def simulate_truth(cfg, rng):
    """Ground-truth state trajectory and 2D measurements for one run."""
    noise = cfg.system_noise()
    meas_noise = IsotropicGaussianNoise(2, cfg.eta)
    h = cfg.measurement_fn()
    a_add = cfg.system_fn_additive()
    a_arb = cfg.system_fn_arbitrary()
    x = cfg.true_init
    xs, zs = [], []
    for _ in range(cfg.k_max):
        w = float(noise.draw(rng, 1)[0])
        x = float(wrap(a_arb(x, w) if cfg.arbitrary_noise else a_add(x) + w))
        xs.append(x)
        zs.append(h(x) + meas_noise.draw(rng, 1)[0])
    return np.array(xs), np.array(zs)


def _run_circular(cfg, zs, likelihood, trace=None):
    state = cfg.init_estimate()
    noise = cfg.system_noise()
    a_add = cfg.system_fn_additive()
    a_arb = cfg.system_fn_arbitrary()
    lam = cfg.sampling_lambda
    estimates = []
    for z in zs:
        if cfg.arbitrary_noise:
            state = filters.predict_arbitrary(state, a_arb, noise, lam=lam)
        else:
            state = filters.predict_nonlinear_additive(state, a_add, noise, lam=lam)
        state = filters.update_progressive(state, z, likelihood,
                                           R=cfg.progression_threshold,
                                           lam=lam, trace=trace)
        estimates.append(state.mu)
    return np.array(estimates), 0


def _run_ukf1d(cfg, zs, h):
    state = baselines.GaussianState(np.array([cfg.init_mu]),
                                    np.array([[cfg.init_sigma**2]]))
    a = cfg.system_fn_additive()
    noise_var = cfg.system_noise_sigma**2
    meas_cov = cfg.eta * np.eye(2)
    estimates = []
    for z in zs:
        state = baselines.ukf1d_predict(state, a, noise_var)
        state = baselines.ukf1d_update(state, z, h, meas_cov)
        estimates.append(float(state.mean[0]))
    return np.array(estimates), 0


def _run_ukf2d(cfg, zs):
    mean = np.array([math.cos(cfg.init_mu), math.sin(cfg.init_mu)])
    state = baselines.GaussianState(mean, cfg.init_sigma**2 * np.eye(2))
    a = cfg.system_fn_additive()

    def a2(v):
        theta = a(math.atan2(v[1], v[0]))
        return np.array([math.cos(theta), math.sin(theta)])

    # crude 1D-to-2D conversion of the angular process noise
    q = cfg.system_noise_sigma**2 * np.eye(2)
    meas_cov = cfg.eta * np.eye(2)
    estimates = []
    for z in zs:
        state = baselines.ukf2d_predict(state, a2, q)
        state = baselines.ukf2d_update(state, z, lambda v: v, meas_cov)
        estimates.append(float(wrap(math.atan2(state.mean[1], state.mean[0]))))
    return np.array(estimates), 0


def _run_pf(cfg, zs, likelihood, count, rng):
    particles = baselines.uniform_particles(cfg.init_estimate().draw(rng, count))
    noise = cfg.system_noise()
    a_add = cfg.system_fn_additive()
    a_arb = cfg.system_fn_arbitrary()
    a = a_arb if cfg.arbitrary_noise else (lambda x, w: a_add(x) + w)
    estimates = []
    degeneracies = 0
    for z in zs:
        particles = baselines.pf_predict(particles, a, noise, rng)
        try:
            particles = baselines.pf_update(particles, likelihood, z, rng)
        except ParticleDegeneracyError:
            degeneracies += 1
            particles = baselines.uniform_particles(particles.particles)
        estimates.append(particles.mean_direction())
    return np.array(estimates), degeneracies


def run_scenario(cfg, filter_ids=None, trace=None):
    """Monte Carlo evaluation of the requested filters on one scenario.

    Returns a list of RunResult ordered by (run, filter).  ``trace``, if
    given, collects the progressive-update (lambda, weight ratio) tuples of
    the circular filter across all runs.
    """
    filter_ids = tuple(filter_ids or cfg.default_filters())
    if cfg.arbitrary_noise:
        bad = set(filter_ids) - set(NON_ADDITIVE_FILTERS)
        if bad:
            raise ValueError(f"filters {sorted(bad)} not applicable with arbitrary noise")
    h = cfg.measurement_fn()
    likelihood = filters.make_additive_likelihood(h, IsotropicGaussianNoise(2, cfg.eta))
    results = []
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.runs)
    for run, child in enumerate(children):
        truth_seed, *filter_seeds = child.spawn(1 + len(filter_ids))
        xs, zs = simulate_truth(cfg, np.random.default_rng(truth_seed))
        for fid, fseed in zip(filter_ids, filter_seeds):
            start = time.perf_counter()
            if fid == "circular":
                est, degen = _run_circular(cfg, zs, likelihood, trace=trace)
            elif fid == "ukf1d":
                est, degen = _run_ukf1d(cfg, zs, h)
            elif fid == "ukf2d":
                est, degen = _run_ukf2d(cfg, zs)
            elif fid in ("pf10", "pf100"):
                count = int(fid[2:])
                est, degen = _run_pf(cfg, zs, likelihood, count,
                                     np.random.default_rng(fseed))
            else:
                raise ValueError(f"unknown filter {fid!r}")
            elapsed = time.perf_counter() - start
            errors = [float(e) for e in angular_distance(est, xs)]
            results.append(RunResult(filter_id=fid, run=run, errors=errors,
                                     rmse=angular_rmse(est, xs),
                                     degeneracies=degen, seconds=elapsed))
    return results
