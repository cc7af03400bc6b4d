"""
Training service

Trains ANN hybrids (the 8 -> 4 -> 1 network with weights tuned by one of
the metaheuristics), sweeps population sizes, compares algorithms on a
shared split and predicts from model files.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ucs_hybrid.config.reference_tables import HYBRID_ACCURACY, SELECTED_POPULATION_SIZES
from ucs_hybrid.config.settings import (
    DEFAULT_NETWORK_SHAPE,
    DEFAULT_POPULATION_SIZES,
    DEFAULT_TRAIN_FRACTION,
    FEATURE_COLUMNS,
    MAX_WORKERS,
    MIN_TRAINING_RECORDS,
    PREDICTION_COLUMN,
    TARGET_COLUMN,
    WEIGHT_BOUND_MAX,
    WEIGHT_BOUND_MIN,
)
from ucs_hybrid.exceptions import InsufficientDataError, TrainingError, UCSHybridError, ValidationError
from ucs_hybrid.optimizers import ObjectiveSpec, ProgressCallback, get_algorithm, run_optimizer
from ucs_hybrid.schemas import (
    Algorithm,
    ConvergenceTrace,
    EvaluationReport,
    MinMaxScaler,
    ModelFile,
    SearchConfig,
    TargetScaler,
)
from ucs_hybrid.services import run_logger
from ucs_hybrid.services.dataset_service import (
    Dataset,
    fit_scaler,
    fit_target_scaler,
    load_features_csv,
    split,
)
from ucs_hybrid.services.metrics_service import METRIC_NAMES, PHASES, REPORT_COLUMNS, evaluate, predict_ucs
from ucs_hybrid.services.network_service import (
    NetworkParams,
    NetworkShape,
    flat_forward,
    forward_batch,
    from_model_file,
    frozen_reference_model,
    load_model,
    param_count,
    to_model_file,
    unflatten,
)

logger = logging.getLogger(__name__)

AlgorithmLike = Union[str, Algorithm]


@dataclass(frozen=True)
class TrainedHybrid:
    """
    A trained network with everything needed to reproduce and evaluate it.

    report.training.rmse equals trace.best_cost: the optimizer's cost is
    the training RMSE.
    """
    algorithm: Algorithm
    params: NetworkParams
    scaler: MinMaxScaler
    target_scaler: TargetScaler
    config: SearchConfig
    trace: ConvergenceTrace
    report: EvaluationReport
    train: Dataset = field(repr=False)
    test: Dataset = field(repr=False)

    @property
    def label(self) -> str:
        return self.algorithm.label

    def to_model_file(self) -> ModelFile:
        return to_model_file(
            self.params,
            input_scaler=self.scaler,
            target_scaler=self.target_scaler,
            algorithm=self.algorithm,
            config=self.config,
            training_rmse=self.report.training.rmse,
        )


# ============================================================================
# OBJECTIVE
# ============================================================================

class TrainingRMSE:
    """
    Cost of a flat parameter vector: RMSE (MPa) of the network on the
    scaled training inputs, outputs mapped back through the target scaler.
    """

    def __init__(self, shape: NetworkShape, inputs: np.ndarray, targets: np.ndarray, target_scaler: TargetScaler):
        self.shape = shape
        self.inputs = inputs
        self.targets = targets
        self.target_scaler = target_scaler

    def __call__(self, vector: np.ndarray) -> float:
        outputs = self.target_scaler.inverse_transform(flat_forward(self.shape, vector, self.inputs))
        return float(np.sqrt(np.mean((self.targets - outputs) ** 2)))


def build_objective(
    train: Dataset,
    scaler: MinMaxScaler,
    target_scaler: TargetScaler,
    shape: NetworkShape = DEFAULT_NETWORK_SHAPE,
) -> ObjectiveSpec:
    """The 41-dimensional training-RMSE objective over [-2, 2] per weight"""
    cost = TrainingRMSE(shape, scaler.transform(train.features), train.targets, target_scaler)
    return ObjectiveSpec.box(param_count(shape), WEIGHT_BOUND_MIN, WEIGHT_BOUND_MAX, cost, name="training RMSE")


# ============================================================================
# TRAINING
# ============================================================================

def train_on_split(
    train: Dataset,
    test: Dataset,
    algorithm: AlgorithmLike,
    config: SearchConfig,
    callback: Optional[ProgressCallback] = None,
) -> TrainedHybrid:
    """
    Train on a given split. Only `train` reaches the scalers and the
    objective; `test` is used for the report alone.
    """
    algorithm = get_algorithm(algorithm)
    scaler = fit_scaler(train)
    target_scaler = fit_target_scaler(train)
    objective = build_objective(train, scaler, target_scaler)

    best, trace = run_optimizer(algorithm, objective, config, callback)
    params = unflatten(DEFAULT_NETWORK_SHAPE, best)
    report = evaluate(params, scaler, train, test, target_scaler)
    return TrainedHybrid(
        algorithm=algorithm,
        params=params,
        scaler=scaler,
        target_scaler=target_scaler,
        config=config,
        trace=trace,
        report=report,
        train=train,
        test=test,
    )


def train_hybrid(
    dataset: Dataset,
    algorithm: AlgorithmLike,
    config: SearchConfig,
    seed: int,
    train_fraction: float = DEFAULT_TRAIN_FRACTION,
) -> TrainedHybrid:
    """
    Split the dataset by `seed`, then train one hybrid.

    The split is driven by `seed` and the optimizer by `config.seed`.

    Raises:
        InsufficientDataError: Fewer than MIN_TRAINING_RECORDS records.
        ObjectiveEvaluationError, UndefinedMetricError, ValidationError:
            propagated from the optimizer, metrics and dataset layers.
    """
    algorithm = get_algorithm(algorithm)
    if len(dataset) < MIN_TRAINING_RECORDS:
        raise InsufficientDataError(MIN_TRAINING_RECORDS, len(dataset), "train_hybrid")
    train, test = split(dataset, train_fraction, seed)

    run_id = run_logger.start_run(algorithm.value, config.population_size, config.iterations, config.seed)
    started_at = time.monotonic()
    try:
        hybrid = train_on_split(train, test, algorithm, config, run_logger.progress_callback(run_id))
    except UCSHybridError as e:
        run_logger.fail_run(run_id, str(e))
        raise
    run_logger.complete_run(run_id, hybrid.trace.best_cost, started_at)
    report = hybrid.report
    logger.info(
        f"{hybrid.label} trained: training RMSE {report.training.rmse:.4f}, "
        f"testing RMSE {report.testing.rmse:.4f}, testing R {report.testing.r:.4f}"
    )
    return hybrid


def _run_jobs(jobs: Sequence[Tuple], workers: int) -> List[Union[TrainedHybrid, Exception]]:
    """
    Run train_hybrid(*job) for every job, in order when workers <= 1.
    Results come back in job order either way; errors are returned, not
    raised.
    """
    results: List[Union[TrainedHybrid, Exception]] = [None] * len(jobs)
    if workers <= 1 or len(jobs) <= 1:
        for i, job in enumerate(jobs):
            try:
                results[i] = train_hybrid(*job)
            except UCSHybridError as e:
                results[i] = e
        return results

    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as executor:
        future_to_index = {executor.submit(train_hybrid, *job): i for i, job in enumerate(jobs)}
        for future in as_completed(future_to_index):
            i = future_to_index[future]
            try:
                results[i] = future.result()
            except UCSHybridError as e:
                results[i] = e
    return results


# ============================================================================
# POPULATION SWEEP
# ============================================================================

@dataclass(frozen=True)
class SweepResult:
    """Per-size hybrids and the size with the smallest training RMSE"""
    algorithm: Algorithm
    best_size: int
    hybrids: Dict[int, TrainedHybrid]

    @property
    def reports(self) -> Dict[int, EvaluationReport]:
        return {size: hybrid.report for size, hybrid in self.hybrids.items()}

    @property
    def best(self) -> TrainedHybrid:
        return self.hybrids[self.best_size]


def select_population_size(reports: Mapping[int, EvaluationReport]) -> int:
    """Smallest training RMSE; ties go to the smaller population"""
    return min(reports, key=lambda size: (reports[size].training.rmse, size))


def population_sweep(
    dataset: Dataset,
    algorithm: AlgorithmLike,
    sizes: Sequence[int] = DEFAULT_POPULATION_SIZES,
    config: Optional[SearchConfig] = None,
    seed: int = 0,
    train_fraction: float = DEFAULT_TRAIN_FRACTION,
    workers: int = MAX_WORKERS,
) -> SweepResult:
    """
    Train once per population size on the same split.

    Raises:
        ValidationError: Empty or duplicated sizes.
        TrainingError: A size failed; tagged with the algorithm and size.
    """
    algorithm = get_algorithm(algorithm)
    config = config or SearchConfig()
    sizes = [int(s) for s in sizes]
    if not sizes:
        raise ValidationError("at least one population size is required", field="sizes")
    if len(set(sizes)) != len(sizes):
        raise ValidationError("population sizes must be distinct", field="sizes")
    if min(sizes) < 2:
        raise ValidationError("population sizes must be >= 2", field="sizes")

    jobs = [
        (dataset, algorithm, config.model_copy(update={"population_size": size}), seed, train_fraction)
        for size in sizes
    ]
    hybrids: Dict[int, TrainedHybrid] = {}
    for size, result in zip(sizes, _run_jobs(jobs, workers)):
        if isinstance(result, Exception):
            raise TrainingError(str(result), algorithm=algorithm.name, population_size=size) from result
        hybrids[size] = result

    best_size = select_population_size({size: h.report for size, h in hybrids.items()})
    logger.info(
        f"{algorithm.label} sweep over {sizes}: selected S_P={best_size} "
        f"(training RMSE {hybrids[best_size].report.training.rmse:.4f})"
    )
    return SweepResult(algorithm=algorithm, best_size=best_size, hybrids=hybrids)


def sweep_frame(sweep: SweepResult) -> pd.DataFrame:
    rows = []
    for size, report in sweep.reports.items():
        rows.append((size,) + report.as_row() + (size == sweep.best_size,))
    return pd.DataFrame(rows, columns=["S_P"] + list(REPORT_COLUMNS[1:]) + ["selected"])


def export_sweep_csv(sweep: SweepResult, path: Union[str, Path]) -> Path:
    """One row per population size with both phases' metrics"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    sweep_frame(sweep).to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Wrote sweep of {len(sweep.hybrids)} sizes to {path}")
    return path


# ============================================================================
# COMPARISON
# ============================================================================

# Direction of "better" per report cell, in EvaluationReport.as_row order
_HIGHER_IS_BETTER = tuple(metric == "R" for _ in PHASES for metric in METRIC_NAMES)
_INDEX_NAMES = tuple(f"{phase} {metric}" for phase in PHASES for metric in METRIC_NAMES)


@dataclass(frozen=True)
class Comparison:
    """
    Result of training several hybrids on one split.

    Attributes:
        hybrids: Successful hybrids keyed by algorithm.
        ranking: Successful algorithms ordered by testing RMSE.
        failures: Error message of every algorithm that failed.
        dominant: Algorithm best on all eight indices, if any.
        disagreements: Indices on which the top-ranked algorithm is not best.
    """
    hybrids: Dict[Algorithm, TrainedHybrid]
    ranking: List[Algorithm]
    failures: Dict[Algorithm, str]
    dominant: Optional[Algorithm]
    disagreements: List[str]

    @property
    def reports(self) -> Dict[str, EvaluationReport]:
        return {a.label: self.hybrids[a].report for a in self.ranking}

    def footer_lines(self) -> List[str]:
        """Comment lines appended below the report table"""
        lines = []
        if self.ranking:
            lines.append("ranking (testing RMSE): " + " > ".join(a.label for a in self.ranking))
        if self.dominant is not None:
            lines.append(f"dominance: {self.dominant.label} is best on all indices in both phases")
        elif self.ranking:
            lines.append("dominance: none; indices disagree with the ranking on " + ", ".join(self.disagreements))
        for algorithm, message in self.failures.items():
            lines.append(f"failed: {algorithm.label}: {message}")
        lines.append("reference values (323 samples, not a pass/fail target):")
        for name, values in HYBRID_ACCURACY.items():
            cells = ", ".join(f"{index} {value:g}" for index, value in zip(_INDEX_NAMES, values))
            lines.append(f"  ANN-{name} (S_P={SELECTED_POPULATION_SIZES[name]}): {cells}")
        return lines


def _best_per_index(reports: Mapping[Algorithm, EvaluationReport]) -> List[Algorithm]:
    algorithms = list(reports)
    rows = np.array([reports[a].as_row() for a in algorithms])
    best = []
    for k, higher in enumerate(_HIGHER_IS_BETTER):
        column = -rows[:, k] if higher else rows[:, k]
        best.append(algorithms[int(np.argmin(column))])
    return best


def rank_hybrids(reports: Mapping[Algorithm, EvaluationReport]) -> Tuple[List[Algorithm], Optional[Algorithm], List[str]]:
    """
    Order by testing RMSE (registry order breaks exact ties) and check
    whether the leader is best on every index.

    Returns:
        (ranking, dominant algorithm or None, disagreeing index names)
    """
    order = list(Algorithm)
    ranking = sorted(reports, key=lambda a: (reports[a].testing.rmse, order.index(a)))
    if not ranking:
        return ranking, None, []
    leader = ranking[0]
    leader_row = reports[leader].as_row()
    disagreements = []
    for k, higher in enumerate(_HIGHER_IS_BETTER):
        values = [reports[a].as_row()[k] for a in ranking]
        best_value = max(values) if higher else min(values)
        if leader_row[k] != best_value:
            disagreements.append(_INDEX_NAMES[k])
    dominant = leader if not disagreements else None
    return ranking, dominant, disagreements


def compare_algorithms(
    dataset: Dataset,
    configs: Mapping[AlgorithmLike, SearchConfig],
    seed: int,
    train_fraction: float = DEFAULT_TRAIN_FRACTION,
    workers: int = MAX_WORKERS,
) -> Comparison:
    """
    Train every algorithm on the identical split and rank them.

    A failing algorithm is recorded in `failures` and left out of the
    ranking; the others still run.

    Raises:
        ValidationError: Fewer than two algorithms.
    """
    configs = {get_algorithm(a): c for a, c in configs.items()}
    if len(configs) < 2:
        raise ValidationError("at least two algorithms are required", field="algorithms")

    jobs = [(dataset, algorithm, config, seed, train_fraction) for algorithm, config in configs.items()]
    hybrids: Dict[Algorithm, TrainedHybrid] = {}
    failures: Dict[Algorithm, str] = {}
    for algorithm, result in zip(configs, _run_jobs(jobs, workers)):
        if isinstance(result, Exception):
            failures[algorithm] = str(result)
            logger.warning(f"{algorithm.label} failed: {result}")
        else:
            hybrids[algorithm] = result

    ranking, dominant, disagreements = rank_hybrids({a: h.report for a, h in hybrids.items()})
    if ranking:
        logger.info(f"Comparison ranking: {', '.join(a.label for a in ranking)}")
    return Comparison(
        hybrids=hybrids,
        ranking=ranking,
        failures=failures,
        dominant=dominant,
        disagreements=disagreements,
    )


# ============================================================================
# PREDICTION
# ============================================================================

def predict_frame(
    model_file: Optional[Union[str, Path]],
    input_csv: Union[str, Path],
    frozen: bool = False,
) -> pd.DataFrame:
    """
    Input columns plus a UCS_PRED column.

    With `frozen`, the published network is applied to the raw columns
    with no scaling and `model_file` is ignored.

    Raises:
        ValidationError: No model file and not frozen.
        SchemaError, DataParseError: Bad input CSV.
    """
    features, targets = load_features_csv(input_csv)
    if frozen:
        predictions = forward_batch(frozen_reference_model(), features)
    else:
        if model_file is None:
            raise ValidationError("a model file is required unless --frozen is given", field="model")
        model = load_model(model_file)
        predictions = predict_ucs(from_model_file(model), features, model.input_scaler, model.target_scaler)

    frame = pd.DataFrame(features, columns=list(FEATURE_COLUMNS))
    if targets is not None:
        frame[TARGET_COLUMN] = targets
    frame[PREDICTION_COLUMN] = predictions
    return frame


def predict(
    model_file: Optional[Union[str, Path]],
    input_csv: Union[str, Path],
    output_csv: Union[str, Path],
    frozen: bool = False,
) -> Path:
    """Write predictions for every row of `input_csv`"""
    frame = predict_frame(model_file, input_csv, frozen)
    output_csv = Path(output_csv)
    output_csv.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(output_csv, index=False, lineterminator="\n")
    suffix = " (frozen model)" if frozen else ""
    logger.info(f"Wrote {len(frame)} prediction(s) to {output_csv}{suffix}")
    return output_csv
