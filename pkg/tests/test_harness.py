import json

import pytest

from heflab.harness import (
    ExperimentError,
    ExperimentSpec,
    run_aut_trivial_fraction,
    run_census_consistency,
    run_distinctness,
    run_experiment,
    run_nh_fraction,
)


def spec(**kwargs):
    defaults = dict(kind="nh-fraction", sizes=((5, 3),), t=1, samples=50, seed=123)
    defaults.update(kwargs)
    return ExperimentSpec(**defaults)


class TestSpecValidation:
    def test_even_nk_rejected(self):
        with pytest.raises(ValueError):
            spec(sizes=((4, 2),))

    def test_t_multiple_of_four_rejected(self):
        with pytest.raises(ValueError):
            spec(sizes=((4, 4),), t=4)

    def test_t_must_divide_2nk(self):
        with pytest.raises(ValueError):
            spec(sizes=((5, 3),), t=7)
        spec(sizes=((5, 3),), t=3)  # 3 | 30

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            spec(kind="frobnicate")

    def test_json_round_trip(self):
        s = spec(kind="aut-trivial-fraction", sizes=((5, 3), (7, 3)))
        assert ExperimentSpec.from_json(s.to_json()) == s

    def test_legacy_single_size_keys(self):
        s = ExperimentSpec.from_json(
            {"kind": "nh-fraction", "n": 5, "k": 3, "samples": 10, "seed": 1}
        )
        assert s.sizes == ((5, 3),)


class TestNHFraction:
    def test_empty_sample_rejected(self):
        with pytest.raises(ExperimentError):
            run_nh_fraction(spec(samples=0))

    def test_small_run_passes_bound(self):
        report = run_nh_fraction(spec(samples=400))
        assert report.passed
        assert report.results["bound"] == pytest.approx(1 - 10 / 13)
        assert report.results["estimate"] > report.results["bound"]
        assert report.results["skeleton_solvable"]

    def test_replay_identical(self):
        a = run_nh_fraction(spec(samples=120))
        b = run_nh_fraction(spec(samples=120))
        assert a.results == b.results
        assert a.rows == b.rows

    def test_unsolvable_skeleton_still_runs(self):
        # k=1 diagonals admit no covering orientation but NH needs none
        report = run_nh_fraction(spec(sizes=((5, 1),), samples=30))
        assert not report.results["skeleton_solvable"]
        assert 0.0 <= report.results["estimate"] <= 1.0

    def test_random_support_policy(self):
        report = run_nh_fraction(spec(support="random", samples=100))
        assert 0.0 <= report.results["estimate"] <= 1.0


class TestAutTrivialFraction:
    def test_fractions_small_and_witnessed(self):
        report = run_aut_trivial_fraction(
            spec(kind="aut-trivial-fraction", sizes=((5, 3), (7, 3)), samples=40)
        )
        assert report.passed
        for entry in report.results["per_size"]:
            assert entry["nontrivial_fraction"] <= 0.2
        assert isinstance(report.results["witnesses"], list)

    def test_unsolvable_size_aborts(self):
        with pytest.raises(ExperimentError):
            run_aut_trivial_fraction(
                spec(kind="aut-trivial-fraction", sizes=((5, 1),), samples=5)
            )

    def test_replay_identical(self):
        s = spec(kind="aut-trivial-fraction", sizes=((5, 3),), samples=25)
        assert run_aut_trivial_fraction(s).results == run_aut_trivial_fraction(s).results


class TestDistinctness:
    def test_no_unexplained_collisions(self):
        report = run_distinctness(spec(kind="distinctness", samples=150))
        assert report.passed
        assert report.results["unexplained_pairs"] == []
        assert report.results["distinct_fills"] == 150

    def test_planted_pair_recognized(self):
        report = run_distinctness(spec(kind="distinctness", samples=20))
        assert report.results["planted_recognized"]
        assert report.results["planted_shift_found"] == report.results["planted_shift_expected"]

    def test_single_sample_trivial(self):
        report = run_distinctness(spec(kind="distinctness", samples=1))
        assert report.passed
        assert report.results["equal_pairs"] == []


class TestCensusConsistency:
    def test_rm_sample_zero(self):
        report = run_census_consistency(spec(kind="census-consistency", samples=15))
        assert report.passed
        assert report.results["sample0_census"] == {93: 10}
        assert report.results["sample0_genus"] == 213

    def test_multipartite_run(self):
        report = run_census_consistency(
            spec(kind="census-consistency", sizes=((7, 3),), t=3, samples=10)
        )
        assert report.passed
        assert report.results["samples_checked"] == 10

    def test_rows_have_census_and_genus(self):
        report = run_census_consistency(spec(kind="census-consistency", samples=5))
        assert len(report.rows) == 5
        assert all("genus" in row and "census" in row for row in report.rows)


class TestDispatchAndDeterminism:
    def test_run_experiment_dispatch(self):
        report = run_experiment(spec(samples=30))
        assert report.spec.kind == "nh-fraction"

    def test_thread_cap_does_not_change_results(self, monkeypatch):
        s = spec(kind="census-consistency", samples=12)
        monkeypatch.setenv("HEFLAB_THREADS", "1")
        serial = run_experiment(s)
        monkeypatch.setenv("HEFLAB_THREADS", "2")
        parallel = run_experiment(s)
        assert serial.results == parallel.results
        assert serial.rows == parallel.rows

    def test_report_json_serializable(self):
        report = run_experiment(spec(samples=20))
        payload = json.dumps(report.to_json())
        assert "subseed_rule" in payload
