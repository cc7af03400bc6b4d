"""
Pydantic schemas for records, search configuration, traces, reports and
model files
"""
import math
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ucs_hybrid.config.settings import (
    DEFAULT_ITERATIONS,
    DEFAULT_POPULATION_SIZE,
    DEFAULT_SEED,
    FEATURE_COLUMNS,
    HGSO_ALPHA,
    HGSO_BETA,
    HGSO_CLUSTERS,
    HGSO_EPSILON,
    HGSO_K,
    HGSO_L1,
    HGSO_L2,
    HGSO_L3,
    HGSO_WORST_MAX_FRACTION,
    HGSO_WORST_MIN_FRACTION,
    MIN_CURING_AGE,
    SBO_MUTATION_PROBABILITY,
    SBO_STEP_SIZE,
    SBO_VARIANCE_FACTOR,
    SFO_MORTALITY_RATE,
    SFO_POLLINATION_RATE,
    SFO_STEP_FACTOR,
    TARGET_SCALED_MAX,
    TARGET_SCALED_MIN,
    VSA_GAMMA_LEVEL,
)


class Algorithm(str, Enum):
    """Metaheuristics available for training the network"""
    SBO = "sbo"
    HGSO = "hgso"
    SFO = "sfo"
    VSA = "vsa"

    @property
    def label(self) -> str:
        return f"ANN-{self.name}"


# ============================================================================
# DATASET
# ============================================================================

class ConcreteRecord(BaseModel):
    """One concrete sample: eight mix/curing inputs and the measured UCS"""
    model_config = ConfigDict(frozen=True)

    csc: float = Field(..., description="Compressive strength of cement (MPa)")
    tsc: float = Field(..., description="Tensile strength of cement (MPa)")
    ca: float = Field(..., description="Curing age (days)")
    dmax: float = Field(..., description="Max crushed-stone size (mm)")
    spc: float = Field(..., description="Stone powder content (%)")
    fm: float = Field(..., description="Fine modulus (dimensionless)")
    wb: float = Field(..., description="Water/binder ratio")
    sr: float = Field(..., description="Sand ratio (%)")
    ucs: float = Field(..., description="Uniaxial compressive strength (MPa)")

    @field_validator("*")
    @classmethod
    def check_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("value must be finite")
        return v

    @field_validator("ucs")
    @classmethod
    def check_positive_ucs(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("UCS must be > 0")
        return v

    @field_validator("ca")
    @classmethod
    def check_curing_age(cls, v: float) -> float:
        if v < MIN_CURING_AGE:
            raise ValueError(f"curing age must be >= {MIN_CURING_AGE:g} day")
        return v

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "ConcreteRecord":
        """Build a record from nine values in canonical column order"""
        names = [c.lower() for c in FEATURE_COLUMNS] + ["ucs"]
        return cls(**dict(zip(names, (float(v) for v in values))))

    def features(self) -> Tuple[float, ...]:
        """The eight inputs in canonical order"""
        return (self.csc, self.tsc, self.ca, self.dmax, self.spc, self.fm, self.wb, self.sr)


class VariableSummary(BaseModel):
    """Descriptive statistics of one column"""
    model_config = ConfigDict(frozen=True)

    mean: float
    standard_error: float = Field(..., ge=0)
    sample_variance: float = Field(..., ge=0)
    minimum: float
    maximum: float

    @model_validator(mode="after")
    def check_ordering(self) -> "VariableSummary":
        if not self.minimum <= self.mean <= self.maximum:
            raise ValueError("expected minimum <= mean <= maximum")
        return self


class DatasetSummary(BaseModel):
    """Per-column statistics of a dataset, keyed by canonical column name"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0)
    variables: Dict[str, VariableSummary]


class MinMaxScaler(BaseModel):
    """
    Per-feature min-max scaling learned from a training split.

    Maps each input to (x - min) / (max - min); values outside the training
    range are not clamped. The target is never touched.
    """
    model_config = ConfigDict(frozen=True)

    feature_names: Tuple[str, ...] = FEATURE_COLUMNS
    minimums: Tuple[float, ...]
    maximums: Tuple[float, ...]

    @model_validator(mode="after")
    def check_lengths(self) -> "MinMaxScaler":
        n = len(self.feature_names)
        if len(self.minimums) != n or len(self.maximums) != n:
            raise ValueError("minimums/maximums must match feature_names")
        for name, lo, hi in zip(self.feature_names, self.minimums, self.maximums):
            if hi < lo:
                raise ValueError(f"{name}: max < min")
        return self

    @property
    def degenerate_features(self) -> List[str]:
        return [
            name for name, lo, hi in zip(self.feature_names, self.minimums, self.maximums)
            if hi == lo
        ]

    def transform(self, features: np.ndarray) -> np.ndarray:
        lo = np.asarray(self.minimums)
        hi = np.asarray(self.maximums)
        return (np.asarray(features, dtype=float) - lo) / (hi - lo)

    def inverse_transform(self, scaled: np.ndarray) -> np.ndarray:
        lo = np.asarray(self.minimums)
        hi = np.asarray(self.maximums)
        return np.asarray(scaled, dtype=float) * (hi - lo) + lo


class TargetScaler(BaseModel):
    """Maps training UCS values onto [TARGET_SCALED_MIN, TARGET_SCALED_MAX]"""
    model_config = ConfigDict(frozen=True)

    minimum: float
    maximum: float
    scaled_min: float = TARGET_SCALED_MIN
    scaled_max: float = TARGET_SCALED_MAX

    @model_validator(mode="after")
    def check_range(self) -> "TargetScaler":
        if self.maximum <= self.minimum:
            raise ValueError("target maximum must exceed minimum")
        return self

    def transform(self, values: np.ndarray) -> np.ndarray:
        span = (self.scaled_max - self.scaled_min) / (self.maximum - self.minimum)
        return (np.asarray(values, dtype=float) - self.minimum) * span + self.scaled_min

    def inverse_transform(self, scaled: np.ndarray) -> np.ndarray:
        span = (self.maximum - self.minimum) / (self.scaled_max - self.scaled_min)
        return (np.asarray(scaled, dtype=float) - self.scaled_min) * span + self.minimum


# ============================================================================
# SEARCH
# ============================================================================

class SearchConfig(BaseModel):
    """
    Population size, iteration budget, seed and per-algorithm
    hyperparameters. Unknown keys are rejected.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    population_size: int = Field(DEFAULT_POPULATION_SIZE, ge=2, description="S_P")
    iterations: int = Field(DEFAULT_ITERATIONS, ge=1, description="T")
    seed: int = Field(DEFAULT_SEED, ge=0)

    # SBO
    step_size: float = Field(SBO_STEP_SIZE, gt=0, description="a, greatest step size")
    mutation_probability: float = Field(SBO_MUTATION_PROBABILITY, ge=0, le=1)
    variance_factor: float = Field(SBO_VARIANCE_FACTOR, gt=0, description="z")

    # HGSO
    hgso_clusters: int = Field(HGSO_CLUSTERS, ge=1)
    hgso_l1: float = Field(HGSO_L1, gt=0)
    hgso_l2: float = Field(HGSO_L2, gt=0)
    hgso_l3: float = Field(HGSO_L3, gt=0)
    hgso_alpha: float = Field(HGSO_ALPHA, ge=0)
    hgso_beta: float = Field(HGSO_BETA, ge=0)
    hgso_k: float = Field(HGSO_K, gt=0)
    hgso_epsilon: float = Field(HGSO_EPSILON, gt=0)
    hgso_worst_min_fraction: float = Field(HGSO_WORST_MIN_FRACTION, ge=0, le=1)
    hgso_worst_max_fraction: float = Field(HGSO_WORST_MAX_FRACTION, ge=0, le=1)

    # SFO
    sfo_pollination_rate: float = Field(SFO_POLLINATION_RATE, ge=0, le=1)
    sfo_mortality_rate: float = Field(SFO_MORTALITY_RATE, ge=0, lt=1)
    sfo_step_factor: float = Field(SFO_STEP_FACTOR, gt=0)

    # VSA
    vsa_gamma_level: float = Field(VSA_GAMMA_LEVEL, gt=0, lt=1)

    @model_validator(mode="after")
    def check_worst_fractions(self) -> "SearchConfig":
        if self.hgso_worst_min_fraction > self.hgso_worst_max_fraction:
            raise ValueError("hgso_worst_min_fraction must not exceed hgso_worst_max_fraction")
        return self


class ConvergenceTrace(BaseModel):
    """Best cost so far after every iteration, plus the final incumbent"""
    model_config = ConfigDict(frozen=True)

    best_costs: List[float]
    best_position: List[float]
    best_cost: float
    initial_best_cost: float
    evaluations: int = Field(0, ge=0)

    @model_validator(mode="after")
    def check_elitism(self) -> "ConvergenceTrace":
        costs = self.best_costs
        if not costs:
            raise ValueError("trace must contain at least one iteration")
        if any(b > a for a, b in zip(costs, costs[1:])):
            raise ValueError("best cost increased between iterations")
        if costs[-1] != self.best_cost:
            raise ValueError("best_cost must equal the last trace entry")
        return self

    @property
    def iterations(self) -> int:
        return len(self.best_costs)


# ============================================================================
# EVALUATION
# ============================================================================

class PhaseMetrics(BaseModel):
    """RMSE, MAPE, MAE and R over one phase"""
    model_config = ConfigDict(frozen=True)

    rmse: float = Field(..., ge=0)
    mape: float = Field(..., ge=0, description="percent")
    mae: float = Field(..., ge=0)
    r: float = Field(..., ge=-1, le=1)
    count: int = Field(..., ge=1, description="Z")

    @model_validator(mode="after")
    def check_power_mean(self) -> "PhaseMetrics":
        if self.rmse < self.mae * (1 - 1e-12):
            raise ValueError("rmse must be >= mae")
        return self

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.rmse, self.mape, self.mae, self.r)


class EvaluationReport(BaseModel):
    """The eight accuracy cells of one hybrid, training then testing"""
    model_config = ConfigDict(frozen=True)

    training: PhaseMetrics
    testing: PhaseMetrics

    def as_row(self) -> Tuple[float, ...]:
        return self.training.as_tuple() + self.testing.as_tuple()


# ============================================================================
# MODEL FILE
# ============================================================================

class ModelFile(BaseModel):
    """JSON representation of a trained network and its scalers"""
    shape: List[int]
    iw: List[List[float]]
    b1: List[float]
    lw: List[float]
    b2: float
    input_scaler: Optional[MinMaxScaler] = None
    target_scaler: Optional[TargetScaler] = None
    algorithm: Optional[Algorithm] = None
    config: Optional[SearchConfig] = None
    training_rmse: Optional[float] = None
