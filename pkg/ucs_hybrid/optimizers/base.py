"""
Shared contract for the population-based minimizers

Every optimizer takes an ObjectiveSpec and a SearchConfig, draws its
initial population uniformly inside the bounds, never evaluates a point
outside them, and returns (best position, ConvergenceTrace). The trace is
elitist: entry t is the best cost seen up to and including iteration t.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple, Union

import numpy as np

from ucs_hybrid.exceptions import DimensionError, ObjectiveEvaluationError, ValidationError
from ucs_hybrid.schemas import ConvergenceTrace

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[int, float], None]
OptimizationResult = Tuple[np.ndarray, ConvergenceTrace]

Bound = Union[float, np.ndarray]


@dataclass(frozen=True)
class ObjectiveSpec:
    """
    A box-bounded minimization problem.

    Attributes:
        dimension: D.
        lower: Per-coordinate Var_min (length D).
        upper: Per-coordinate Var_max (length D).
        cost: Pure function from a D-vector to a finite real.
        name: Label used in log messages.
    """
    dimension: int
    lower: np.ndarray
    upper: np.ndarray
    cost: Callable[[np.ndarray], float] = field(repr=False)
    name: str = "objective"

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValidationError("must be >= 1", field="dimension")
        for label, bound in (("lower", self.lower), ("upper", self.upper)):
            if bound.shape != (self.dimension,):
                raise DimensionError(f"{label} bound has the wrong length", expected=self.dimension, actual=bound.size)
            if not np.all(np.isfinite(bound)):
                raise ValidationError("bounds must be finite", field=label)
            bound.setflags(write=False)
        if np.any(self.upper <= self.lower):
            raise ValidationError("var_max must exceed var_min for every coordinate", field="bounds")

    @classmethod
    def box(
        cls,
        dimension: int,
        var_min: Bound,
        var_max: Bound,
        cost: Callable[[np.ndarray], float],
        name: str = "objective",
    ) -> "ObjectiveSpec":
        """Build an objective from scalar (uniform) or per-coordinate bounds"""
        lower = np.broadcast_to(np.asarray(var_min, dtype=float), (dimension,)).copy()
        upper = np.broadcast_to(np.asarray(var_max, dtype=float), (dimension,)).copy()
        return cls(dimension=dimension, lower=lower, upper=upper, cost=cost, name=name)


class Evaluator:
    """
    Calls the cost function, counts evaluations and enforces the contract:
    candidates inside the bounds, finite costs, failures tagged with the
    iteration they happened in.
    """

    def __init__(self, objective: ObjectiveSpec):
        self.objective = objective
        self.evaluations = 0

    def __call__(self, position: np.ndarray, iteration: int) -> float:
        objective = self.objective
        if np.any(position < objective.lower) or np.any(position > objective.upper):
            raise ObjectiveEvaluationError("candidate outside the search bounds", iteration=iteration)
        try:
            value = float(objective.cost(position))
        except ObjectiveEvaluationError:
            raise
        except Exception as e:
            raise ObjectiveEvaluationError(f"{objective.name} failed: {e}", iteration=iteration) from e
        if not np.isfinite(value):
            raise ObjectiveEvaluationError(f"{objective.name} returned {value}", iteration=iteration)
        self.evaluations += 1
        return value

    def many(self, positions: np.ndarray, iteration: int) -> np.ndarray:
        return np.array([self(x, iteration) for x in positions])


class TraceRecorder:
    """Tracks the incumbent and builds the ConvergenceTrace"""

    def __init__(self, evaluator: Evaluator, callback: Optional[ProgressCallback] = None):
        self.evaluator = evaluator
        self.callback = callback
        self.best_position: Optional[np.ndarray] = None
        self.best_cost = np.inf
        self.initial_best_cost = np.inf
        self.best_costs = []

    def start(self, positions: np.ndarray, costs: np.ndarray) -> None:
        """Register the evaluated initial population"""
        self.offer_population(positions, costs)
        self.initial_best_cost = self.best_cost

    def offer(self, position: np.ndarray, cost: float) -> bool:
        if cost < self.best_cost:
            self.best_cost = float(cost)
            self.best_position = np.array(position, dtype=float)
            return True
        return False

    def offer_population(self, positions: np.ndarray, costs: np.ndarray) -> bool:
        i = int(np.argmin(costs))
        return self.offer(positions[i], costs[i])

    def record(self, iteration: int) -> None:
        self.best_costs.append(self.best_cost)
        if self.callback is not None:
            self.callback(iteration, self.best_cost)

    def result(self) -> OptimizationResult:
        trace = ConvergenceTrace(
            best_costs=self.best_costs,
            best_position=self.best_position.tolist(),
            best_cost=self.best_cost,
            initial_best_cost=self.initial_best_cost,
            evaluations=self.evaluator.evaluations,
        )
        return self.best_position.copy(), trace


def initial_population(objective: ObjectiveSpec, size: int, rng: np.random.Generator) -> np.ndarray:
    """(size, D) positions drawn uniformly in [lower, upper)"""
    return rng.uniform(objective.lower, objective.upper, size=(size, objective.dimension))


def clamp(positions: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    return np.clip(positions, lower, upper)


def start_search(objective: ObjectiveSpec, population_size: int, rng: np.random.Generator, callback=None):
    """
    Draw and evaluate the initial population.

    Returns:
        (evaluator, recorder, positions, costs)
    """
    evaluator = Evaluator(objective)
    recorder = TraceRecorder(evaluator, callback)
    positions = initial_population(objective, population_size, rng)
    costs = evaluator.many(positions, iteration=0)
    recorder.start(positions, costs)
    return evaluator, recorder, positions, costs
