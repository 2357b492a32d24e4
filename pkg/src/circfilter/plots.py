"""Optional matplotlib figure rendering next to the CSV output."""

import math
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def _cells(rows, keys):
    grouped = defaultdict(list)
    for row in rows:
        grouped[tuple(row[k] for k in keys)].append(row)
    return grouped


def render_propagation(rows, path):
    """Per-sigma panels: first-moment error and KLD versus nonlinearity c."""
    sigmas = sorted({row["sigma"] for row in rows})
    samplers = sorted({row["sampler"] for row in rows})
    fig, axes = plt.subplots(2, len(sigmas), figsize=(4 * len(sigmas), 6),
                             squeeze=False, sharex=True)
    for col, sigma in enumerate(sigmas):
        for metric, ax in (("m1_error", axes[0][col]), ("kld", axes[1][col])):
            for sampler in samplers:
                pts = sorted((r["c"], r[metric]) for r in rows
                             if r["sigma"] == sigma and r["sampler"] == sampler
                             and not math.isnan(r[metric]))
                ax.semilogy([p[0] for p in pts], [p[1] for p in pts],
                            marker="o", label=sampler)
            ax.set_ylabel(metric)
            ax.grid(True, alpha=0.3)
        axes[0][col].set_title(f"sigma = {sigma}")
        axes[1][col].set_xlabel("c")
    axes[0][0].legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_multiplication(rows, path, metric="kld"):
    """Grid of panels over (sigma1, sigma2): metric versus mean offset."""
    s1s = sorted({row["sigma1"] for row in rows})
    s2s = sorted({row["sigma2"] for row in rows})
    fig, axes = plt.subplots(len(s2s), len(s1s),
                             figsize=(4 * len(s1s), 3 * len(s2s)),
                             squeeze=False, sharex=True)
    for (s1, s2), cell in _cells(rows, ("sigma1", "sigma2")).items():
        ax = axes[s2s.index(s2)][s1s.index(s1)]
        for method in sorted({r["method"] for r in cell}):
            pts = sorted((r["mu_delta"], r[metric]) for r in cell
                         if r["method"] == method and not r["degenerate"]
                         and not math.isnan(r[metric]))
            ax.semilogy([p[0] for p in pts], [p[1] for p in pts], label=method)
        ax.set_title(f"sigma1={s1}, sigma2={s2}", fontsize=9)
        ax.grid(True, alpha=0.3)
    axes[0][0].legend()
    for ax in axes[-1]:
        ax.set_xlabel("mu2 - mu1")
    for row_axes in axes:
        row_axes[0].set_ylabel(metric)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_filtering(rows, path):
    """Boxplots of per-run angular RMSE, one panel per scenario."""
    scenarios = sorted({row["scenario"] for row in rows})
    fig, axes = plt.subplots(1, len(scenarios), figsize=(4 * len(scenarios), 4),
                             squeeze=False)
    for col, scenario in enumerate(scenarios):
        ax = axes[0][col]
        cell = [r for r in rows if r["scenario"] == scenario]
        filters = sorted({r["filter"] for r in cell})
        data = [[r["rmse"] for r in cell if r["filter"] == f] for f in filters]
        ax.boxplot(data, tick_labels=filters)
        ax.set_title(scenario)
        ax.set_ylabel("angular RMSE [rad]")
        ax.tick_params(axis="x", rotation=45)
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
