"""
Concrete dataset service

Loads, validates, summarizes, splits, scales and synthesizes datasets of
eight mix/curing inputs (CSC, TSC, CA, DMAX, SPC, FM, WB, SR) and the
measured UCS.
"""
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from ucs_hybrid.config.reference_tables import DATASET_STATISTICS, REFERENCE_SAMPLE_COUNT
from ucs_hybrid.config.settings import (
    COLUMN_UNITS,
    CSV_COLUMNS,
    DEFAULT_SYNTHETIC_NOISE_STD,
    FEATURE_COLUMNS,
    MIN_CURING_AGE,
    TARGET_COLUMN,
)
from ucs_hybrid.exceptions import (
    DataParseError,
    DataValidationError,
    DegenerateFeatureError,
    InsufficientDataError,
    ResourceNotFoundError,
    SchemaError,
    ValidationError,
)
from ucs_hybrid.schemas import (
    ConcreteRecord,
    DatasetSummary,
    MinMaxScaler,
    TargetScaler,
    VariableSummary,
)
from ucs_hybrid.services.network_service import forward_batch, frozen_reference_model

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_CA_INDEX = FEATURE_COLUMNS.index("CA")


@dataclass(frozen=True)
class Dataset:
    """
    Immutable table of samples.

    Attributes:
        features: (n, 8) inputs in canonical column order.
        targets: (n,) UCS in MPa.
        row_ids: (n,) position of each sample in the dataset it was
            loaded or generated as; preserved through split.
    """
    features: np.ndarray
    targets: np.ndarray
    row_ids: np.ndarray

    def __post_init__(self) -> None:
        for arr in (self.features, self.targets, self.row_ids):
            arr.setflags(write=False)

    @classmethod
    def from_arrays(
        cls,
        features: np.ndarray,
        targets: np.ndarray,
        row_ids: Optional[np.ndarray] = None,
    ) -> "Dataset":
        """
        Validate and wrap raw arrays.

        Raises:
            DataParseError: Non-finite value (row is 1-based).
            DataValidationError: UCS <= 0 or curing age < 1 day.
        """
        features = np.array(features, dtype=float).reshape(-1, len(FEATURE_COLUMNS))
        targets = np.array(targets, dtype=float).reshape(-1)
        if features.shape[0] != targets.shape[0]:
            raise ValidationError("features and targets differ in length")
        _check_finite(features, FEATURE_COLUMNS)
        _check_finite(targets.reshape(-1, 1), (TARGET_COLUMN,))
        bad = np.flatnonzero(targets <= 0)
        if bad.size:
            raise DataValidationError(f"UCS must be > 0, got {targets[bad[0]]!r}", row=int(bad[0]) + 1, column=TARGET_COLUMN)
        bad = np.flatnonzero(features[:, _CA_INDEX] < MIN_CURING_AGE)
        if bad.size:
            raise DataValidationError(
                f"curing age must be >= {MIN_CURING_AGE:g} day, got {features[bad[0], _CA_INDEX]!r}",
                row=int(bad[0]) + 1,
                column="CA",
            )
        if row_ids is None:
            row_ids = np.arange(targets.size)
        return cls(features=features, targets=targets, row_ids=np.array(row_ids, dtype=np.int64))

    def __len__(self) -> int:
        return int(self.targets.size)

    def subset(self, indices: np.ndarray) -> "Dataset":
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(
            features=self.features[indices].copy(),
            targets=self.targets[indices].copy(),
            row_ids=self.row_ids[indices].copy(),
        )

    def records(self) -> List[ConcreteRecord]:
        return [
            ConcreteRecord.from_values(list(f) + [t])
            for f, t in zip(self.features.tolist(), self.targets.tolist())
        ]

    def column(self, name: str) -> np.ndarray:
        if name == TARGET_COLUMN:
            return self.targets
        return self.features[:, FEATURE_COLUMNS.index(name)]


def _check_finite(values: np.ndarray, columns) -> None:
    bad = np.argwhere(~np.isfinite(values))
    if bad.size:
        row, col = bad[0]
        raise DataParseError(f"non-finite value {values[row, col]!r}", row=int(row) + 1, column=columns[col])


# ============================================================================
# CSV I/O
# ============================================================================

def _read_table(path: PathLike, required, optional=()) -> pd.DataFrame:
    """
    Read a CSV as strings, check the header and convert cells to floats.

    Header names are matched case-insensitively; column order in the file
    does not matter. Row numbers in errors are 1-based data rows.
    """
    path = Path(path)
    if not path.is_file():
        raise ResourceNotFoundError("CSV file", str(path))
    try:
        raw = pd.read_csv(path, header=None, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError:
        raise SchemaError(f"{path} has no header row")
    except pd.errors.ParserError as e:
        raise DataParseError(f"malformed CSV: {e}")

    header = [str(h).strip().upper() for h in raw.iloc[0]]
    seen = set()
    for name in header:
        if name in seen:
            raise SchemaError("duplicate column", column=name)
        seen.add(name)
        if name not in required and name not in optional:
            raise SchemaError("unknown column", column=name)
    for name in required:
        if name not in seen:
            raise SchemaError("missing column", column=name)

    body = raw.iloc[1:].reset_index(drop=True)
    body.columns = header
    table = pd.DataFrame(index=body.index)
    for name in [c for c in tuple(required) + tuple(optional) if c in seen]:
        cells = body[name].str.strip()
        values = pd.to_numeric(cells, errors="coerce")
        bad = np.flatnonzero(values.isna().to_numpy())
        if bad.size:
            row = int(bad[0])
            raise DataParseError(f"not a number: {cells.iloc[row]!r}", row=row + 1, column=name)
        infinite = np.flatnonzero(~np.isfinite(values.to_numpy(dtype=float)))
        if infinite.size:
            row = int(infinite[0])
            raise DataParseError(f"non-finite value {cells.iloc[row]!r}", row=row + 1, column=name)
        table[name] = values.astype(float)
    return table


def load_csv(path: PathLike) -> Dataset:
    """
    Load a dataset from a CSV with header CSC,TSC,CA,DMAX,SPC,FM,WB,SR,UCS.

    Returns:
        Dataset preserving file order.

    Raises:
        ResourceNotFoundError: File does not exist.
        SchemaError: Missing, duplicate or unknown column.
        DataParseError: Non-numeric or non-finite cell (with row/column).
        DataValidationError: UCS <= 0 or curing age < 1.
    """
    table = _read_table(path, CSV_COLUMNS)
    dataset = Dataset.from_arrays(
        table[list(FEATURE_COLUMNS)].to_numpy(dtype=float),
        table[TARGET_COLUMN].to_numpy(dtype=float),
    )
    logger.info(f"Loaded {len(dataset)} records from {path}")
    return dataset


def load_features_csv(path: PathLike) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """
    Load the eight feature columns for prediction; UCS is optional.

    Returns:
        (features, targets or None)
    """
    table = _read_table(path, FEATURE_COLUMNS, optional=(TARGET_COLUMN,))
    features = table[list(FEATURE_COLUMNS)].to_numpy(dtype=float).reshape(-1, len(FEATURE_COLUMNS))
    targets = table[TARGET_COLUMN].to_numpy(dtype=float) if TARGET_COLUMN in table else None
    return features, targets


def to_frame(dataset: Dataset) -> pd.DataFrame:
    frame = pd.DataFrame(dataset.features, columns=list(FEATURE_COLUMNS))
    frame[TARGET_COLUMN] = dataset.targets
    return frame


def save_csv(dataset: Dataset, path: PathLike) -> Path:
    """Write a dataset with the canonical header; floats use repr (lossless)"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    to_frame(dataset).to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Wrote {len(dataset)} records to {path}")
    return path


# ============================================================================
# SUMMARY
# ============================================================================

def _describe(values: np.ndarray) -> VariableSummary:
    n = values.size
    lo = float(values.min())
    hi = float(values.max())
    # Shift by the minimum so identical values give mean == min exactly
    mean = lo + math.fsum((values - lo).tolist()) / n
    mean = min(max(mean, lo), hi)
    variance = math.fsum(((values - mean) ** 2).tolist()) / (n - 1)
    return VariableSummary(
        mean=mean,
        standard_error=math.sqrt(variance / n),
        sample_variance=variance,
        minimum=lo,
        maximum=hi,
    )


def summarize(dataset: Dataset) -> DatasetSummary:
    """
    Mean, sample variance (n - 1), standard error, min and max per column.

    Raises:
        InsufficientDataError: Fewer than two records.
    """
    n = len(dataset)
    if n < 2:
        raise InsufficientDataError(2, n, "summarize")
    return DatasetSummary(
        n=n,
        variables={name: _describe(dataset.column(name)) for name in CSV_COLUMNS},
    )


def published_summary() -> DatasetSummary:
    """Published statistics of the 323-sample dataset"""
    return DatasetSummary(
        n=REFERENCE_SAMPLE_COUNT,
        variables={
            name: VariableSummary(
                mean=mean, standard_error=se, sample_variance=var, minimum=lo, maximum=hi
            )
            for name, (mean, se, var, lo, hi) in DATASET_STATISTICS.items()
        },
    )


def summary_frame(summary: DatasetSummary) -> pd.DataFrame:
    rows = []
    for name in CSV_COLUMNS:
        v = summary.variables[name]
        rows.append({
            "Parameter": name,
            "Unit": COLUMN_UNITS[name],
            "Mean": v.mean,
            "Standard Error": v.standard_error,
            "Sample Variance": v.sample_variance,
            "Minimum": v.minimum,
            "Maximum": v.maximum,
        })
    return pd.DataFrame(rows)


def export_summary_csv(summary: DatasetSummary, path: PathLike) -> Path:
    """Write a summary in the layout of the published statistics table"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    summary_frame(summary).to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Wrote summary of {summary.n} records to {path}")
    return path


# ============================================================================
# SPLIT AND SCALING
# ============================================================================

def split(dataset: Dataset, train_fraction: float, seed: int) -> Tuple[Dataset, Dataset]:
    """
    Random train/test partition.

    The permutation comes from numpy's default generator seeded with
    `seed`; train size is floor(train_fraction * n). Both parts keep the
    original record order.

    Raises:
        InsufficientDataError: Empty dataset.
        ValidationError: train_fraction outside (0, 1].
    """
    n = len(dataset)
    if n == 0:
        raise InsufficientDataError(1, 0, "split")
    if not 0 < train_fraction <= 1:
        raise ValidationError(f"must be in (0, 1], got {train_fraction}", field="train_fraction")
    n_train = min(n, math.floor(train_fraction * n))
    permutation = np.random.default_rng(seed).permutation(n)
    train_idx = np.sort(permutation[:n_train])
    test_idx = np.sort(permutation[n_train:])
    logger.debug(f"Split {n} records into {train_idx.size} train / {test_idx.size} test (seed={seed})")
    return dataset.subset(train_idx), dataset.subset(test_idx)


def fit_scaler(train: Dataset) -> MinMaxScaler:
    """
    Learn per-feature min/max from the training split only.

    Raises:
        InsufficientDataError: Empty training split.
        DegenerateFeatureError: A feature is constant on the training split.
    """
    if len(train) == 0:
        raise InsufficientDataError(1, 0, "fit_scaler")
    lo = train.features.min(axis=0)
    hi = train.features.max(axis=0)
    for name, a, b in zip(FEATURE_COLUMNS, lo, hi):
        if a == b:
            raise DegenerateFeatureError(name)
    return MinMaxScaler(minimums=tuple(lo.tolist()), maximums=tuple(hi.tolist()))


def apply_scaler(scaler: MinMaxScaler, record: ConcreteRecord) -> Tuple[np.ndarray, float]:
    """
    Scale one record's inputs; values are not clamped to [0, 1].

    Returns:
        (scaled features, unchanged UCS)
    """
    return scaler.transform(np.asarray(record.features(), dtype=float)), record.ucs


def scale_features(scaler: MinMaxScaler, features: np.ndarray) -> np.ndarray:
    return scaler.transform(features)


def invert_scaler(scaler: MinMaxScaler, scaled: np.ndarray) -> np.ndarray:
    """Map scaled inputs back to physical units"""
    return scaler.inverse_transform(scaled)


def fit_target_scaler(train: Dataset) -> TargetScaler:
    """
    Learn the UCS range of the training split.

    Raises:
        InsufficientDataError: Empty training split.
        DegenerateFeatureError: All training UCS values are equal.
    """
    if len(train) == 0:
        raise InsufficientDataError(1, 0, "fit_target_scaler")
    lo = float(train.targets.min())
    hi = float(train.targets.max())
    if lo == hi:
        raise DegenerateFeatureError(TARGET_COLUMN)
    return TargetScaler(minimum=lo, maximum=hi)


# ============================================================================
# SYNTHETIC SURROGATE
# ============================================================================

def planted_outputs(summary: DatasetSummary, features: np.ndarray) -> np.ndarray:
    """
    Raw output of the published network on inputs min-max scaled by the
    summary's feature ranges.

    Raises:
        DegenerateFeatureError: A feature has minimum == maximum.
    """
    lo = np.array([summary.variables[c].minimum for c in FEATURE_COLUMNS])
    hi = np.array([summary.variables[c].maximum for c in FEATURE_COLUMNS])
    for name, a, b in zip(FEATURE_COLUMNS, lo, hi):
        if a == b:
            raise DegenerateFeatureError(name)
    return forward_batch(frozen_reference_model(), (features - lo) / (hi - lo))


def synthesize(
    summary: DatasetSummary,
    n: int,
    seed: int,
    noise_std: float = DEFAULT_SYNTHETIC_NOISE_STD,
) -> Dataset:
    """
    Generate a dataset whose target is planted by the published network.

    Draw order from numpy's default generator seeded with `seed`: the
    (n, 8) uniform feature matrix row by row, then n standard normals for
    the noise. Network outputs are rescaled so their sample min/max land
    on the summary's UCS min/max, noise is added, and targets are clipped
    into that UCS range.

    Raises:
        InsufficientDataError: n < 2.
        ValidationError: Negative noise_std.
    """
    if n < 2:
        raise InsufficientDataError(2, n, "synthesize")
    if noise_std < 0:
        raise ValidationError("must be >= 0", field="noise_std")
    rng = np.random.default_rng(seed)
    lo = np.array([summary.variables[c].minimum for c in FEATURE_COLUMNS])
    hi = np.array([summary.variables[c].maximum for c in FEATURE_COLUMNS])
    features = rng.uniform(lo, hi, size=(n, len(FEATURE_COLUMNS)))
    noise = rng.standard_normal(n) * noise_std

    outputs = planted_outputs(summary, features)
    ucs = summary.variables[TARGET_COLUMN]
    spread = outputs.max() - outputs.min()
    if spread > 0:
        targets = ucs.minimum + (outputs - outputs.min()) / spread * (ucs.maximum - ucs.minimum)
    else:
        targets = np.full(n, (ucs.minimum + ucs.maximum) / 2)
    targets = np.clip(targets + noise, ucs.minimum, ucs.maximum)
    logger.info(f"Synthesized {n} records (seed={seed}, noise_std={noise_std:g})")
    return Dataset.from_arrays(features, targets)
