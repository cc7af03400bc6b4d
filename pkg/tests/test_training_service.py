"""
Tests for hybrid training, population sweeps, algorithm comparison and
prediction.
Run with: pytest tests/test_training_service.py -v
"""
import logging
from unittest.mock import patch

import numpy as np
import pandas as pd
import pytest

from ucs_hybrid.exceptions import (
    InsufficientDataError,
    ObjectiveEvaluationError,
    TrainingError,
    ValidationError,
)
from ucs_hybrid.schemas import Algorithm, EvaluationReport, PhaseMetrics, SearchConfig
from ucs_hybrid.services import run_logger, training_service
from ucs_hybrid.services.dataset_service import (
    fit_scaler,
    fit_target_scaler,
    save_csv,
    split,
    synthesize,
    published_summary,
)
from ucs_hybrid.services.metrics_service import rmse
from ucs_hybrid.services.network_service import flatten, save_model
from ucs_hybrid.services.training_service import (
    TrainingRMSE,
    build_objective,
    compare_algorithms,
    population_sweep,
    predict,
    predict_frame,
    rank_hybrids,
    select_population_size,
    sweep_frame,
    train_hybrid,
    train_on_split,
)


def make_report(test_rmse, test_r=0.9, train_rmse=5.0, test_mae=None):
    training = PhaseMetrics(rmse=train_rmse, mape=10.0, mae=train_rmse * 0.8, r=0.9, count=10)
    testing = PhaseMetrics(
        rmse=test_rmse, mape=10.0, mae=test_mae if test_mae is not None else test_rmse * 0.8, r=test_r, count=5
    )
    return EvaluationReport(training=training, testing=testing)


class TestObjective:
    """Test the training-RMSE cost"""

    def test_bounds_and_dimension(self, small_dataset):
        train, _ = split(small_dataset, 0.8, seed=0)
        objective = build_objective(train, fit_scaler(train), fit_target_scaler(train))
        assert objective.dimension == 41
        assert objective.lower.tolist() == [-2.0] * 41
        assert objective.upper.tolist() == [2.0] * 41
        assert isinstance(objective.cost, TrainingRMSE)

    def test_zero_weights_predict_target_midpoint(self, small_dataset):
        """All-zero parameters output 0, which maps back to the middle of the UCS range"""
        train, _ = split(small_dataset, 0.8, seed=0)
        target_scaler = fit_target_scaler(train)
        objective = build_objective(train, fit_scaler(train), target_scaler)
        midpoint = (target_scaler.minimum + target_scaler.maximum) / 2
        expected = rmse(train.targets, np.full(len(train), midpoint))
        assert objective.cost(np.zeros(41)) == pytest.approx(expected, rel=1e-12)


class TestTrainHybrid:
    """Test single-hybrid training"""

    def test_trace_matches_training_rmse(self, small_dataset, tiny_config):
        hybrid = train_hybrid(small_dataset, "sbo", tiny_config, seed=0)
        assert hybrid.trace.iterations == tiny_config.iterations
        assert abs(hybrid.report.training.rmse - hybrid.trace.best_cost) <= 1e-9
        assert hybrid.report.training.count == 48
        assert hybrid.report.testing.count == 12

    def test_deterministic(self, small_dataset, tiny_config):
        a = train_hybrid(small_dataset, Algorithm.VSA, tiny_config, seed=4)
        b = train_hybrid(small_dataset, Algorithm.VSA, tiny_config, seed=4)
        assert np.array_equal(flatten(a.params), flatten(b.params))
        assert a.report == b.report
        assert a.trace.best_costs == b.trace.best_costs

    def test_split_seed_changes_split(self, small_dataset, tiny_config):
        a = train_hybrid(small_dataset, "sbo", tiny_config, seed=0)
        b = train_hybrid(small_dataset, "sbo", tiny_config, seed=1)
        assert not np.array_equal(a.train.row_ids, b.train.row_ids)

    def test_test_split_never_reaches_training(self, small_dataset, tiny_config):
        """Same training split with two different testing splits -> identical parameters"""
        train, test = split(small_dataset, 0.8, seed=0)
        other_test = synthesize(published_summary(), 7, seed=99)
        a = train_on_split(train, test, "hgso", tiny_config)
        b = train_on_split(train, other_test, "hgso", tiny_config)
        assert np.array_equal(flatten(a.params), flatten(b.params))
        assert a.scaler == b.scaler
        assert a.trace.best_costs == b.trace.best_costs
        assert a.report.training == b.report.training

    def test_model_file_carries_scalers(self, small_dataset, tiny_config):
        hybrid = train_hybrid(small_dataset, "sfo", tiny_config, seed=0)
        model = hybrid.to_model_file()
        assert model.algorithm is Algorithm.SFO
        assert model.input_scaler == hybrid.scaler
        assert model.target_scaler == hybrid.target_scaler
        assert model.training_rmse == hybrid.report.training.rmse

    def test_too_few_records(self, make_dataset, tiny_config):
        rows = [[100, 50, 28, 20, 4, 3, 0.5, 0.5, 30 + i] for i in range(5)]
        with pytest.raises(InsufficientDataError):
            train_hybrid(make_dataset(rows), "sbo", tiny_config, seed=0)

    def test_unknown_algorithm(self, small_dataset, tiny_config):
        with pytest.raises(ValidationError):
            train_hybrid(small_dataset, "ga", tiny_config, seed=0)

    def test_run_is_logged(self, small_dataset, tiny_config, caplog):
        caplog.set_level(logging.INFO, logger=run_logger.__name__)
        hybrid = train_hybrid(small_dataset, "sbo", tiny_config, seed=0)
        messages = [r.getMessage() for r in caplog.records if r.name == run_logger.__name__]
        assert messages[0].startswith("Started run run_sbo_sp6_")
        assert messages[-1].startswith("Completed run run_sbo_sp6_")
        assert f"best cost {hybrid.trace.best_cost:.6g}" in messages[-1]

    def test_failed_run_is_logged(self, small_dataset, tiny_config, caplog):
        caplog.set_level(logging.INFO, logger=run_logger.__name__)
        with patch.object(
            training_service, "run_optimizer", side_effect=ObjectiveEvaluationError("boom", iteration=3)
        ):
            with pytest.raises(ObjectiveEvaluationError):
                train_hybrid(small_dataset, "sbo", tiny_config, seed=0)
        last = [r for r in caplog.records if r.name == run_logger.__name__][-1]
        assert last.levelno == logging.WARNING
        assert "failed" in last.getMessage()
        assert "iteration 3" in last.getMessage()


class TestPopulationSweep:
    """Test population-size selection"""

    def test_selects_smallest_training_rmse(self, small_dataset):
        config = SearchConfig(iterations=4, seed=2)
        sweep = population_sweep(small_dataset, "sbo", sizes=[4, 8, 12], config=config, seed=0, workers=1)
        assert set(sweep.hybrids) == {4, 8, 12}
        training = {size: report.training.rmse for size, report in sweep.reports.items()}
        assert training[sweep.best_size] == min(training.values())
        for size, hybrid in sweep.hybrids.items():
            assert hybrid.config.population_size == size

    def test_shared_split(self, small_dataset):
        sweep = population_sweep(
            small_dataset, "vsa", sizes=[4, 6], config=SearchConfig(iterations=3), seed=5, workers=1
        )
        ids = [hybrid.train.row_ids for hybrid in sweep.hybrids.values()]
        assert np.array_equal(ids[0], ids[1])

    def test_singleton(self, small_dataset, tiny_config):
        sweep = population_sweep(small_dataset, "sbo", sizes=[6], config=tiny_config, workers=1)
        assert sweep.best_size == 6
        assert sweep.best is sweep.hybrids[6]

    @pytest.mark.parametrize("sizes", [[], [4, 4], [1, 4]])
    def test_invalid_sizes(self, small_dataset, sizes):
        with pytest.raises(ValidationError):
            population_sweep(small_dataset, "sbo", sizes=sizes, workers=1)

    def test_failure_names_size(self, small_dataset, tiny_config):
        real_train = training_service.train_hybrid

        def flaky(dataset, algorithm, config, seed, train_fraction):
            if config.population_size == 8:
                raise ObjectiveEvaluationError("diverged", iteration=2)
            return real_train(dataset, algorithm, config, seed, train_fraction)

        with patch.object(training_service, "train_hybrid", side_effect=flaky):
            with pytest.raises(TrainingError) as exc_info:
                population_sweep(small_dataset, "hgso", sizes=[4, 8], config=tiny_config, workers=1)
        assert exc_info.value.population_size == 8
        assert "S_P=8" in str(exc_info.value)

    def test_tie_goes_to_smaller_size(self):
        reports = {50: make_report(4.0, train_rmse=3.0), 10: make_report(5.0, train_rmse=3.0)}
        assert select_population_size(reports) == 10

    def test_frame(self, small_dataset, tiny_config):
        sweep = population_sweep(small_dataset, "sbo", sizes=[4, 6], config=tiny_config, workers=1)
        frame = sweep_frame(sweep)
        assert frame.columns[0] == "S_P"
        assert frame.columns[-1] == "selected"
        assert frame["selected"].sum() == 1
        assert frame.loc[frame["selected"], "S_P"].item() == sweep.best_size

    def test_process_pool_matches_sequential(self, small_dataset, tiny_config):
        sequential = population_sweep(small_dataset, "sbo", sizes=[4, 6], config=tiny_config, workers=1)
        pooled = population_sweep(small_dataset, "sbo", sizes=[4, 6], config=tiny_config, workers=2)
        assert sequential.reports == pooled.reports
        assert sequential.best_size == pooled.best_size

    def test_worker_failure_names_size(self, make_dataset, tiny_config):
        rows = [[100, 50, 28, 20, 4, 3, 0.5, 0.5, 30 + i] for i in range(5)]
        with pytest.raises(TrainingError) as exc_info:
            population_sweep(make_dataset(rows), "sbo", sizes=[4, 6], config=tiny_config, workers=2)
        assert exc_info.value.population_size == 4
        assert isinstance(exc_info.value.__cause__, InsufficientDataError)
        assert "needs at least 10 records" in str(exc_info.value)


class TestRanking:
    """Test ranking and dominance"""

    def test_orders_by_testing_rmse(self):
        reports = {
            Algorithm.HGSO: make_report(9.5),
            Algorithm.SBO: make_report(5.1, test_r=0.95),
            Algorithm.VSA: make_report(5.3, test_r=0.94),
        }
        ranking, dominant, disagreements = rank_hybrids(reports)
        assert ranking == [Algorithm.SBO, Algorithm.VSA, Algorithm.HGSO]
        assert dominant is Algorithm.SBO
        assert disagreements == []

    def test_no_dominance(self):
        """Leader by RMSE but not by R"""
        reports = {
            Algorithm.SBO: make_report(5.1, test_r=0.90),
            Algorithm.SFO: make_report(6.0, test_r=0.95),
        }
        ranking, dominant, disagreements = rank_hybrids(reports)
        assert ranking[0] is Algorithm.SBO
        assert dominant is None
        assert disagreements == ["Testing R"]

    def test_tie_uses_registry_order(self):
        reports = {Algorithm.VSA: make_report(5.0), Algorithm.HGSO: make_report(5.0)}
        ranking, _, _ = rank_hybrids(reports)
        assert ranking == [Algorithm.HGSO, Algorithm.VSA]


class TestCompareAlgorithms:
    """Test training several hybrids on one split"""

    def test_identical_split(self, small_dataset, tiny_config):
        comparison = compare_algorithms(
            small_dataset, {"sbo": tiny_config, "vsa": tiny_config}, seed=3, workers=1
        )
        sbo, vsa = comparison.hybrids[Algorithm.SBO], comparison.hybrids[Algorithm.VSA]
        assert np.array_equal(sbo.train.row_ids, vsa.train.row_ids)
        assert np.array_equal(sbo.test.row_ids, vsa.test.row_ids)
        assert set(comparison.ranking) == {Algorithm.SBO, Algorithm.VSA}
        rmses = [comparison.hybrids[a].report.testing.rmse for a in comparison.ranking]
        assert rmses == sorted(rmses)

    def test_reports_keyed_by_label(self, small_dataset, tiny_config):
        comparison = compare_algorithms(
            small_dataset, {"sbo": tiny_config, "sfo": tiny_config}, seed=0, workers=1
        )
        assert set(comparison.reports) == {"ANN-SBO", "ANN-SFO"}

    def test_failure_is_recorded(self, small_dataset, tiny_config):
        real_train = training_service.train_hybrid

        def flaky(dataset, algorithm, config, seed, train_fraction):
            if algorithm is Algorithm.HGSO:
                raise ObjectiveEvaluationError("diverged", iteration=1)
            return real_train(dataset, algorithm, config, seed, train_fraction)

        with patch.object(training_service, "train_hybrid", side_effect=flaky):
            comparison = compare_algorithms(
                small_dataset, {"sbo": tiny_config, "hgso": tiny_config}, seed=0, workers=1
            )
        assert comparison.ranking == [Algorithm.SBO]
        assert "diverged" in comparison.failures[Algorithm.HGSO]
        assert any(line.startswith("failed: ANN-HGSO") for line in comparison.footer_lines())

    def test_footer_cites_reference_values(self, small_dataset, tiny_config):
        comparison = compare_algorithms(
            small_dataset, {"sbo": tiny_config, "vsa": tiny_config}, seed=0, workers=1
        )
        footer = "\n".join(comparison.footer_lines())
        assert footer.startswith("ranking (testing RMSE): ")
        assert "dominance: " in footer
        assert "ANN-SBO (S_P=300)" in footer
        assert "Testing RMSE 5.1679" in footer
        assert "Testing R 0.95663" in footer

    def test_worker_failures_are_recorded(self, make_dataset, tiny_config):
        rows = [[100, 50, 28, 20, 4, 3, 0.5, 0.5, 30 + i] for i in range(5)]
        comparison = compare_algorithms(
            make_dataset(rows), {"sbo": tiny_config, "vsa": tiny_config}, seed=0, workers=2
        )
        assert comparison.ranking == []
        assert set(comparison.failures) == {Algorithm.SBO, Algorithm.VSA}
        assert all("needs at least 10 records" in error for error in comparison.failures.values())

    def test_needs_two_algorithms(self, small_dataset, tiny_config):
        with pytest.raises(ValidationError):
            compare_algorithms(small_dataset, {"sbo": tiny_config}, seed=0)


class TestPredict:
    """Test prediction from model files and the published network"""

    def test_frozen_at_zero_input(self, write_csv):
        path = write_csv("CSC,TSC,CA,DMAX,SPC,FM,WB,SR\n0,0,0,0,0,0,0,0\n")
        frame = predict_frame(None, path, frozen=True)
        assert frame["UCS_PRED"].iloc[0] == pytest.approx(-1.8374, abs=5e-4)
        assert "UCS" not in frame.columns

    def test_keeps_ucs_column(self, dataset_csv):
        frame = predict_frame(None, dataset_csv, frozen=True)
        assert list(frame.columns[-2:]) == ["UCS", "UCS_PRED"]
        assert len(frame) == 60

    def test_header_only_input(self, write_csv, header_line, tmp_path):
        path = write_csv(header_line + "\n")
        output = predict(None, path, tmp_path / "out" / "pred.csv", frozen=True)
        lines = output.read_text().splitlines()
        assert lines == [header_line + ",UCS_PRED"]

    def test_model_file_reproduces_training_rmse(self, small_dataset, tiny_config, tmp_path):
        hybrid = train_hybrid(small_dataset, "sbo", tiny_config, seed=0)
        model_path = save_model(hybrid.to_model_file(), tmp_path / "model.json")
        train_csv = save_csv(hybrid.train, tmp_path / "train.csv")
        frame = pd.read_csv(predict(model_path, train_csv, tmp_path / "pred.csv"))
        assert rmse(frame["UCS"], frame["UCS_PRED"]) == pytest.approx(hybrid.report.training.rmse, abs=1e-9)

    def test_model_required_unless_frozen(self, dataset_csv):
        with pytest.raises(ValidationError):
            predict_frame(None, dataset_csv)


@pytest.mark.slow
class TestLearnability:
    """End-to-end check on the planted synthetic dataset"""

    def test_sbo_learns_planted_network(self, reference_summary):
        dataset = synthesize(reference_summary, 323, seed=0, noise_std=2.0)
        passed = 0
        for seed in range(3):
            config = SearchConfig(population_size=50, iterations=300, seed=seed)
            report = train_hybrid(dataset, "sbo", config, seed=seed).report
            if report.testing.r >= 0.85 and report.testing.mape <= 15.0:
                passed += 1
        assert passed >= 2
