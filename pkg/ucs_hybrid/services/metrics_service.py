"""
Accuracy criteria and evaluation reports

MAE, MAPE (percent), RMSE and Pearson's R between expected and predicted
UCS, and the eight-cell training/testing report built from them.
"""
import logging
from pathlib import Path
from typing import Iterable, Mapping, Optional, Protocol, Tuple, Union

import numpy as np
import pandas as pd

from ucs_hybrid.exceptions import DimensionError, UndefinedMetricError, ValidationError
from ucs_hybrid.schemas import EvaluationReport, MinMaxScaler, PhaseMetrics, TargetScaler

logger = logging.getLogger(__name__)

METRIC_NAMES = ("RMSE", "MAPE", "MAE", "R")
PHASES = ("Training", "Testing")
REPORT_COLUMNS = ("Hybrid",) + tuple(f"{phase} {metric}" for phase in PHASES for metric in METRIC_NAMES)


class Predictor(Protocol):
    def predict(self, features: np.ndarray) -> np.ndarray: ...


def _paired(expected, predicted) -> Tuple[np.ndarray, np.ndarray]:
    e = np.asarray(expected, dtype=float).ravel()
    p = np.asarray(predicted, dtype=float).ravel()
    if e.size != p.size:
        raise DimensionError("expected and predicted differ in length", expected=e.size, actual=p.size)
    if e.size == 0:
        raise ValidationError("at least one pair is required", field="Z")
    if not (np.all(np.isfinite(e)) and np.all(np.isfinite(p))):
        raise ValidationError("metric inputs must be finite")
    return e, p


def mae(expected, predicted) -> float:
    """(1/Z) Σ |expected - predicted|"""
    e, p = _paired(expected, predicted)
    return float(np.mean(np.abs(e - p)))


def mape(expected, predicted) -> float:
    """
    (1/Z) Σ |(expected - predicted) / expected| × 100

    Raises:
        UndefinedMetricError: If any expected value is zero.
    """
    e, p = _paired(expected, predicted)
    if np.any(e == 0):
        raise UndefinedMetricError("MAPE is undefined when an expected value is 0")
    return float(np.mean(np.abs((e - p) / e)) * 100.0)


def rmse(expected, predicted) -> float:
    """sqrt((1/Z) Σ (expected - predicted)^2)"""
    e, p = _paired(expected, predicted)
    return float(np.sqrt(np.mean((e - p) ** 2)))


def pearson_r(expected, predicted) -> float:
    """
    Pearson correlation coefficient.

    Raises:
        ValidationError: Fewer than two pairs.
        UndefinedMetricError: Either vector is constant.
    """
    e, p = _paired(expected, predicted)
    if e.size < 2:
        raise ValidationError("at least two pairs are required", field="Z")
    if np.ptp(e) == 0 or np.ptp(p) == 0:
        raise UndefinedMetricError("R is undefined when a vector has zero variance")
    dp = p - p.mean()
    de = e - e.mean()
    r = float(np.sum(dp * de) / (np.sqrt(np.sum(dp ** 2)) * np.sqrt(np.sum(de ** 2))))
    return min(1.0, max(-1.0, r))


def phase_metrics(expected, predicted, phase: Optional[str] = None) -> PhaseMetrics:
    """All four criteria for one phase; errors carry the phase name"""
    try:
        return PhaseMetrics(
            rmse=rmse(expected, predicted),
            mape=mape(expected, predicted),
            mae=mae(expected, predicted),
            r=pearson_r(expected, predicted),
            count=np.asarray(expected).size,
        )
    except UndefinedMetricError as e:
        raise UndefinedMetricError(e.message, phase=phase) from e
    except ValidationError as e:
        raise ValidationError(e.message, field=f"{phase} phase" if phase else None) from e


def predict_ucs(
    model: Predictor,
    features: np.ndarray,
    scaler: Optional[MinMaxScaler] = None,
    target_scaler: Optional[TargetScaler] = None,
) -> np.ndarray:
    """Scale inputs, run the model and map its output back to MPa"""
    inputs = scaler.transform(features) if scaler is not None else np.asarray(features, dtype=float)
    outputs = model.predict(inputs)
    if target_scaler is not None:
        outputs = target_scaler.inverse_transform(outputs)
    return np.asarray(outputs, dtype=float)


def evaluate(
    model: Predictor,
    scaler: Optional[MinMaxScaler],
    train,
    test,
    target_scaler: Optional[TargetScaler] = None,
) -> EvaluationReport:
    """
    Fill the eight report cells for a model on both splits.

    Args:
        model: Anything with predict(features) -> predictions, e.g. NetworkParams.
        scaler: Input scaler fit on the training split (None to skip).
        train: Training Dataset.
        test: Testing Dataset.
        target_scaler: Maps network output back to MPa (None to skip).
    """
    report = EvaluationReport(
        training=phase_metrics(
            train.targets, predict_ucs(model, train.features, scaler, target_scaler), phase="training"
        ),
        testing=phase_metrics(
            test.targets, predict_ucs(model, test.features, scaler, target_scaler), phase="testing"
        ),
    )
    logger.debug(f"Evaluation: {report.as_row()}")
    return report


# ============================================================================
# REPORT EXPORT
# ============================================================================

def report_frame(reports: Mapping[str, EvaluationReport]) -> pd.DataFrame:
    """One row per hybrid: training RMSE, MAPE, MAE, R then testing"""
    rows = [(label,) + report.as_row() for label, report in reports.items()]
    return pd.DataFrame(rows, columns=list(REPORT_COLUMNS))


def export_report_csv(
    reports: Mapping[str, EvaluationReport],
    path: Union[str, Path],
    footer: Iterable[str] = (),
) -> Path:
    """
    Write the accuracy table; footer lines are appended as `# ` comments
    (read back with pandas.read_csv(path, comment="#")).
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = report_frame(reports).to_csv(index=False, lineterminator="\n")
    for line in footer:
        text += f"# {line}\n"
    path.write_text(text, encoding="utf-8")
    logger.info(f"Wrote report for {len(reports)} hybrid(s) to {path}")
    return path
