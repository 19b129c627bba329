import math

import pytest
from click.testing import CliRunner

from smoothopt.cli import main
from smoothopt.harness import (
    ConfigError,
    ExperimentConfig,
    RegretRecord,
    checkpoints,
    emit_csv,
    run_experiment,
)


class TestCheckpoints:
    def test_small(self):
        assert checkpoints(1) == [1]
        assert checkpoints(5) == [1, 2, 4, 5]
        assert checkpoints(8) == [1, 2, 4, 8]

    def test_always_ends_at_t(self):
        for T in (3, 100, 1000):
            cps = checkpoints(T)
            assert cps[-1] == T
            assert cps == sorted(set(cps))


class TestConfigValidation:
    def test_unknown_environment(self):
        with pytest.raises(ConfigError):
            ExperimentConfig("casino").validate()

    def test_unknown_learner(self):
        with pytest.raises(ConfigError):
            ExperimentConfig("smoothed", learner="oracle").validate()

    def test_bad_horizon(self):
        with pytest.raises(ConfigError):
            ExperimentConfig("smoothed", T=0).validate()

    def test_bad_eta(self):
        with pytest.raises(ConfigError):
            ExperimentConfig("smoothed", eta=-0.5).validate()

    def test_bad_bandit_params(self):
        with pytest.raises(ConfigError):
            ExperimentConfig("smoothed", learner="bandit", mu=0.3).validate()

    def test_bad_kmeans_centers(self):
        with pytest.raises(ConfigError):
            ExperimentConfig("kmeans", n=3, centers=5).validate()

    def test_valid_defaults(self):
        for env in ("smoothed", "worstcase", "knapsack", "mwis", "kmeans"):
            ExperimentConfig(env, T=10).validate()


class TestRunExperiment:
    def test_determinism(self):
        cfg = ExperimentConfig("smoothed", T=64, rounds=3, seed=42)
        a = run_experiment(cfg)
        b = run_experiment(cfg)
        assert a == b

    def test_seed_changes_results(self):
        a = run_experiment(ExperimentConfig("smoothed", T=64, rounds=3, seed=1))
        b = run_experiment(ExperimentConfig("smoothed", T=64, rounds=3, seed=2))
        assert a != b

    def test_record_shape(self):
        recs = run_experiment(ExperimentConfig("worstcase", T=16, rounds=2))
        assert [r.t for r in recs] == [1, 2, 4, 8, 16]
        for r in recs:
            assert r.std_regret >= 0.0
            assert math.isfinite(r.mean_regret)

    def test_fullinfo_bound_is_two_eta(self):
        cfg = ExperimentConfig("smoothed", T=32, rounds=1)
        recs = run_experiment(cfg)
        want = 2.0 * cfg.fullinfo_eta()
        assert all(r.bound == want for r in recs)

    def test_bandit_bound_decays(self):
        recs = run_experiment(
            ExperimentConfig("smoothed", learner="bandit", T=64, rounds=1)
        )
        bounds = [r.bound for r in recs]
        assert bounds == sorted(bounds, reverse=True)

    def test_fixed_instance_reuses_curve(self):
        cfg = ExperimentConfig("knapsack", T=32, rounds=1, n=5, fixed_instance=True)
        recs = run_experiment(cfg)
        # one fixed instance: the learner converges onto a constant optimum,
        # so late per-round regret must be small
        assert recs[-1].mean_regret < recs[0].mean_regret + 1e-9


class TestEmitCsv:
    def test_golden_bytes(self, tmp_path):
        recs = [RegretRecord(1, 0.5, 0.0, 0.1)]
        p = tmp_path / "out.csv"
        emit_csv(recs, str(p))
        assert p.read_text() == "t,mean_regret,std_regret,bound\n1,0.5,0.0,0.1\n"

    def test_empty_error(self, tmp_path):
        with pytest.raises(ValueError):
            emit_csv([], str(tmp_path / "x.csv"))

    def test_run_reproduces_bytes(self, tmp_path):
        cfg = ExperimentConfig("worstcase", T=16, rounds=2, seed=9)
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_csv(run_experiment(cfg), str(p1))
        emit_csv(run_experiment(cfg), str(p2))
        assert p1.read_bytes() == p2.read_bytes()


class TestCli:
    def test_smoothed_run(self, tmp_path):
        out = tmp_path / "run.csv"
        res = CliRunner().invoke(
            main, ["smoothed", "--T", "32", "--rounds", "2", "--out", str(out)]
        )
        assert res.exit_code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "t,mean_regret,std_regret,bound"
        assert len(lines) == 1 + len(checkpoints(32))

    def test_bandit_learner_flag(self, tmp_path):
        out = tmp_path / "run.csv"
        res = CliRunner().invoke(
            main,
            ["knapsack", "--T", "27", "--n", "5", "--learner", "bandit", "--out", str(out)],
        )
        assert res.exit_code == 0

    def test_config_error_exit_code(self, tmp_path):
        res = CliRunner().invoke(
            main, ["smoothed", "--T", "0", "--out", str(tmp_path / "x.csv")]
        )
        assert res.exit_code == 2

    def test_io_error_exit_code(self):
        res = CliRunner().invoke(
            main, ["smoothed", "--T", "4", "--out", "/nonexistent-dir/x.csv"]
        )
        assert res.exit_code == 3
