import json

import pytest

from supcomp.errors import UsageError
from supcomp.services.model_loader import load_model
from supcomp.services.mutations import MUTATIONS
from supcomp.services.reporting import render, report_filename, write_report
from supcomp.services.runner import replay, run_suite, trial_seed
from supcomp.services.suites import SUITES, properties


def without_timestamp(report):
    return report.model_dump(mode="json", exclude={"timestamp"})


class TestSuites:
    def test_every_suite_has_properties(self):
        for suite in SUITES:
            assert properties(suite)

    @pytest.mark.parametrize("suite", SUITES)
    def test_rational_suites_pass(self, suite):
        report = run_suite(suite, trials=8, seed=0)
        assert report.passed, render(report, "text")
        assert report.counterexamples == []
        assert all(p.passed + p.vacuous == 8 for p in report.properties)

    @pytest.mark.parametrize("suite", SUITES)
    def test_float_suites_pass(self, suite):
        report = run_suite(suite, trials=4, seed=3, backend="float")
        assert report.passed, render(report, "text")

    @pytest.mark.parametrize("suite", ["expectation", "convergence", "martingales"])
    def test_suites_on_a_model(self, suite, coin_flips_path):
        report = run_suite(suite, trials=6, seed=2, model=load_model(coin_flips_path),
                           model_name=str(coin_flips_path))
        assert report.passed, render(report, "text")
        assert report.model == str(coin_flips_path)


class TestMutations:
    @pytest.mark.parametrize("mutation", sorted(MUTATIONS))
    def test_mutation_is_caught_and_replays(self, mutation):
        suite = MUTATIONS[mutation].suite
        report = run_suite(suite, trials=50, seed=0, mutation=mutation)
        assert not report.passed
        assert report.counterexamples
        first = report.counterexamples[0]
        assert first.trial_seed == trial_seed(0, suite, first.property.split("/", 1)[1], first.trial)
        outcome, space = replay(first.property, first.trial_seed, mutation=mutation)
        assert not outcome.holds
        assert space == first.model

    def test_unknown_mutation(self):
        with pytest.raises(UsageError):
            run_suite("cone-axioms", trials=1, seed=0, mutation="no-such-mutation")


class TestRunner:
    def test_reports_are_deterministic(self):
        first = run_suite("cone-axioms", trials=10, seed=7)
        second = run_suite("cone-axioms", trials=10, seed=7)
        assert without_timestamp(first) == without_timestamp(second)

    def test_mutated_reports_are_deterministic(self):
        first = run_suite("multiplication", trials=20, seed=1, mutation="multiply-zero-times-inf")
        second = run_suite("multiplication", trials=20, seed=1, mutation="multiply-zero-times-inf")
        assert render(first).replace(first.timestamp, "") == render(second).replace(second.timestamp, "")

    def test_workers_do_not_change_results(self):
        serial = run_suite("bands-decomposition", trials=6, seed=4)
        parallel = run_suite("bands-decomposition", trials=6, seed=4, workers=2)
        assert without_timestamp(serial) == without_timestamp(parallel)

    def test_zero_trials(self):
        report = run_suite("all", trials=0, seed=0)
        assert report.passed
        assert report.properties == []

    def test_all_runs_every_suite(self):
        report = run_suite("all", trials=1, seed=0)
        suites = {p.name.split("/", 1)[0] for p in report.properties}
        assert suites == set(SUITES)

    def test_float_runs_skip_rational_only_properties(self):
        report = run_suite("borel-cantelli", trials=1, seed=0, backend="float")
        assert "borel-cantelli/product-harness" not in {p.name for p in report.properties}

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"name": "no-such-suite"},
            {"name": "cone-axioms", "trials": -1},
            {"name": "cone-axioms", "workers": 0},
            {"name": "cone-axioms", "backend": "decimal"},
        ],
    )
    def test_usage_errors(self, kwargs):
        arguments = {"trials": 1, "seed": 0, **kwargs}
        with pytest.raises(UsageError):
            run_suite(**arguments)

    def test_replay_needs_a_qualified_name(self):
        with pytest.raises(UsageError):
            replay("meet-join-coordinatewise", 1)
        with pytest.raises(UsageError):
            replay("cone-axioms/no-such-property", 1)

    def test_trial_seeds_differ(self):
        seeds = {trial_seed(0, "cone-axioms", "meet-join-coordinatewise", t) for t in range(100)}
        assert len(seeds) == 100


class TestReports:
    def test_json_report(self):
        report = run_suite("cone-axioms", trials=3, seed=0, mutation="meet-as-join")
        data = json.loads(render(report, "json"))
        assert data["passed"] is False
        assert data["mutation"] == "meet-as-join"
        assert data["counterexamples"][0]["property"].startswith("cone-axioms/")

    def test_text_report_has_replay_commands(self):
        report = run_suite("cone-axioms", trials=3, seed=0, mutation="meet-as-join")
        text = render(report, "text")
        assert "result FAIL" in text
        assert "supcomp replay --property cone-axioms/" in text
        assert "--mutate meet-as-join" in text

    def test_unknown_format(self):
        with pytest.raises(UsageError):
            render(run_suite("cone-axioms", trials=0, seed=0), "xml")

    def test_report_into_directory(self, tmp_path):
        report = run_suite("convergence", trials=0, seed=9)
        path = write_report(report, tmp_path, "text")
        assert path.name == report_filename(report, "text") == "convergence-rational-seed-9-0-trials.txt"
        assert path.read_text(encoding="utf-8").startswith("suite convergence")
