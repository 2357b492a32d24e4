"""Command line interface for the evaluation experiments.

Subcommands ``propagate-eval``, ``multiply-eval``, and ``filter-eval`` each
write a CSV file; ``--plot`` additionally renders matplotlib figures next to
the CSV output.
"""

import argparse
import pathlib

import numpy as np

from . import experiments, plots
from .scenarios import SCENARIO_NAMES, scenario_config, scenario_from_json


def _add_common(parser, default_out):
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path(default_out),
                        help="output CSV path")
    parser.add_argument("--plot", action="store_true",
                        help="render figures next to the CSV output")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="circfilter",
        description="Circular filtering benchmark suite")
    sub = parser.add_subparsers(dest="command", required=True)

    prop = sub.add_parser("propagate-eval",
                          help="deterministic-sampling propagation accuracy")
    prop.add_argument("--c-points", type=int, default=10,
                      help="number of nonlinearity values in [0, 0.9]")
    prop.add_argument("--lambda", dest="lam", type=float, default=0.5,
                      help="five-point sampler center-weight parameter")
    _add_common(prop, "propagation.csv")

    mul = sub.add_parser("multiply-eval",
                         help="wrapped-normal multiplication comparison")
    mul.add_argument("--mu-points", type=int, default=32,
                     help="number of mean offsets over [0, 2pi)")
    _add_common(mul, "multiplication.csv")

    filt = sub.add_parser("filter-eval", help="Monte Carlo filtering benchmark")
    filt.add_argument("--scenario", action="append", choices=SCENARIO_NAMES,
                      help="scenario name (repeatable; default: all six)")
    filt.add_argument("--config", type=pathlib.Path,
                      help="JSON file with scenario fields (overrides --scenario)")
    filt.add_argument("--runs", type=int, help="Monte Carlo runs per scenario")
    filt.add_argument("--seed", type=int, help="master seed")
    filt.add_argument("--filters", type=str,
                      help="comma-separated filter ids (default per scenario)")
    filt.add_argument("--lambda", dest="lam", type=float,
                      help="five-point sampler center-weight parameter")
    filt.add_argument("--progression-threshold", type=float,
                      help="minimum weight ratio R of the progressive update")
    _add_common(filt, "filtering.csv")
    return parser


def _filter_eval(args):
    overrides = {}
    if args.runs is not None:
        overrides["runs"] = args.runs
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.lam is not None:
        overrides["sampling_lambda"] = args.lam
    if args.progression_threshold is not None:
        overrides["progression_threshold"] = args.progression_threshold
    if args.config is not None:
        configs = [scenario_from_json(args.config, **overrides)]
    else:
        names = args.scenario or list(SCENARIO_NAMES)
        configs = [scenario_config(name, **overrides) for name in names]
    filter_ids = args.filters.split(",") if args.filters else None
    rows = []
    for cfg in configs:
        rows.extend(experiments.run_filtering_experiment(cfg, filters=filter_ids))
    return rows, plots.render_filtering


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "propagate-eval":
        c_grid = np.linspace(0.0, 0.9, args.c_points)
        rows = experiments.run_propagation_experiment(c_grid, lam=args.lam)
        renderer = plots.render_propagation
    elif args.command == "multiply-eval":
        deltas = np.linspace(0.0, 2.0 * np.pi, args.mu_points, endpoint=False)
        rows = experiments.run_multiplication_experiment(mu_delta_grid=deltas)
        renderer = plots.render_multiplication
    else:
        rows, renderer = _filter_eval(args)
    experiments.write_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    if args.plot:
        fig_path = args.out.with_suffix(".png")
        renderer(rows, fig_path)
        print(f"wrote figure to {fig_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
