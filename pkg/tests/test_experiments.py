"""Experiment drivers and scenario machinery (small configurations only)."""

import csv
import json
import math

import numpy as np
import pytest

from circfilter.experiments import (
    run_filtering_experiment,
    run_multiplication_experiment,
    run_propagation_experiment,
    write_csv,
)
from circfilter.scenarios import (
    ADDITIVE_FILTERS,
    NON_ADDITIVE_FILTERS,
    SCENARIO_NAMES,
    run_scenario,
    scenario_config,
    scenario_from_json,
    simulate_truth,
)


class TestPropagationExperiment:
    def test_row_grid(self):
        rows = run_propagation_experiment([0.0, 0.5], sigma_set=(1.0,))
        assert len(rows) == 2 * 1 * 3
        assert {r["sampler"] for r in rows} == {"wd3", "wd5", "naive"}

    def test_linear_case_near_exact(self):
        rows = run_propagation_experiment([0.0], sigma_set=(1.0,))
        for row in rows:
            if row["sampler"] != "naive":
                assert row["m1_error"] < 1e-12
                assert row["kld"] < 1e-10

    def test_wd5_beats_wd3_on_second_moment(self):
        rows = run_propagation_experiment([0.5], sigma_set=(1.0,))
        by = {r["sampler"]: r for r in rows}
        assert by["wd5"]["m2_error"] < by["wd3"]["m2_error"]

    def test_kld_nonnegative(self):
        rows = run_propagation_experiment(np.linspace(0, 0.9, 4))
        for row in rows:
            assert math.isnan(row["kld"]) or row["kld"] > -1e-10


class TestMultiplicationExperiment:
    def test_grid_and_methods(self):
        deltas = np.linspace(0, 2 * np.pi, 4, endpoint=False)
        rows = run_multiplication_experiment(sigma1_set=(0.4,), sigma2_set=(0.5,),
                                             mu_delta_grid=deltas)
        assert len(rows) == 4 * 2
        assert {r["method"] for r in rows} == {"moment", "via_vm"}

    def test_aligned_narrow_case_both_accurate(self):
        rows = run_multiplication_experiment(sigma1_set=(0.1,), sigma2_set=(0.2,),
                                             mu_delta_grid=[0.0])
        for row in rows:
            assert not row["degenerate"]
            assert row["kld"] < 1e-3

    def test_moment_method_wins_on_disagreeing_narrow_case(self):
        # narrow densities with well-separated means: the von Mises detour
        # forgets the bimodal mass split while the moment method keeps it
        rows = run_multiplication_experiment(sigma1_set=(0.1,), sigma2_set=(0.2,),
                                             mu_delta_grid=[0.75 * np.pi])
        by = {r["method"]: r for r in rows}
        assert by["moment"]["kld"] < by["via_vm"]["kld"]


class TestScenarioConfig:
    def test_names(self):
        assert len(SCENARIO_NAMES) == 6
        for name in SCENARIO_NAMES:
            cfg = scenario_config(name)
            assert cfg.name == name
            assert cfg.arbitrary_noise == name.endswith("non-additive")

    def test_eta_ladder(self):
        etas = [scenario_config(n).eta for n in ("s", "m", "l")]
        assert etas == [0.01, 0.1, 3.0]

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            scenario_config("x")

    def test_overrides(self):
        cfg = scenario_config("s", runs=3, seed=99)
        assert cfg.runs == 3 and cfg.seed == 99

    def test_default_filters(self):
        assert scenario_config("s").default_filters() == ADDITIVE_FILTERS
        assert (scenario_config("s-non-additive").default_filters()
                == NON_ADDITIVE_FILTERS)

    def test_from_json(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"name": "m", "runs": 2}))
        cfg = scenario_from_json(path, seed=7)
        assert cfg.name == "m" and cfg.runs == 2 and cfg.seed == 7


class TestSimulateTruth:
    def test_deterministic_given_rng(self):
        cfg = scenario_config("s", k_max=20)
        a = simulate_truth(cfg, np.random.default_rng(5))
        b = simulate_truth(cfg, np.random.default_rng(5))
        assert np.array_equal(a[0], b[0])
        assert np.array_equal(a[1], b[1])

    def test_shapes(self):
        cfg = scenario_config("s", k_max=20)
        xs, zs = simulate_truth(cfg, np.random.default_rng(5))
        assert xs.shape == (20,)
        assert zs.shape == (20, 2)

    def test_measurements_near_unit_circle_when_eta_small(self):
        cfg = scenario_config("s", k_max=50, eta=1e-6)
        xs, zs = simulate_truth(cfg, np.random.default_rng(6))
        assert np.allclose(np.linalg.norm(zs, axis=1), 1.0, atol=1e-2)


class TestRunScenario:
    def test_reproducible(self):
        cfg = scenario_config("s", runs=2, k_max=15)
        a = run_scenario(cfg, filter_ids=("circular",))
        b = run_scenario(cfg, filter_ids=("circular",))
        assert [r.rmse for r in a] == [r.rmse for r in b]

    def test_all_filters_run(self):
        cfg = scenario_config("s", runs=1, k_max=10)
        results = run_scenario(cfg)
        assert {r.filter_id for r in results} == set(ADDITIVE_FILTERS)
        for r in results:
            assert 0.0 <= r.rmse <= math.pi
            assert len(r.errors) == 10

    def test_non_additive_rejects_ukf(self):
        cfg = scenario_config("s-non-additive", runs=1, k_max=5)
        with pytest.raises(ValueError):
            run_scenario(cfg, filter_ids=("ukf1d",))

    def test_trace_collected(self):
        cfg = scenario_config("s", runs=1, k_max=5)
        trace = []
        run_scenario(cfg, filter_ids=("circular",), trace=trace)
        assert trace, "progressive update should have produced steps"
        assert sum(step for step, _ in trace) == pytest.approx(5.0, abs=1e-10)


class TestFilteringExperimentRows:
    def test_row_fields(self):
        cfg = scenario_config("m-non-additive", runs=2, k_max=10)
        rows = run_filtering_experiment(cfg, filters=("circular", "pf10"))
        assert len(rows) == 4
        for row in rows:
            assert row["scenario"] == "m-non-additive"
            assert row["filter"] in ("circular", "pf10")
            assert row["seconds"] >= 0.0


class TestWriteCsv:
    def test_round_trip(self, tmp_path):
        rows = [{"a": 1, "b": "x"}, {"a": 2, "b": "y"}]
        path = tmp_path / "out.csv"
        write_csv(rows, path)
        with open(path) as fh:
            back = list(csv.DictReader(fh))
        assert back == [{"a": "1", "b": "x"}, {"a": "2", "b": "y"}]

    def test_empty_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            write_csv([], tmp_path / "out.csv")
