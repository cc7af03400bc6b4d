"""
Satin bowerbird optimizer

Each bower is a candidate solution. Per iteration the population is ranked
by fitness 1 / (1 + cost). Every coordinate k of every bower moves toward
the midpoint of the elite and bower j_k, where j_k is drawn by roulette
separately for each coordinate. Each bower then gets a Gaussian mutation,
and the old and new populations are merged and truncated to the best S_P.

RNG draw order (numpy default_rng(config.seed)):
    1. (S_P, D) uniforms for the initial population
    2. per iteration, per bower i in order: D uniforms for the roulette
       (one per coordinate), D uniforms for the mutation mask, D standard
       normals for the noise
"""
import logging
from typing import Optional, Tuple

import numpy as np

from ucs_hybrid.exceptions import DimensionError, ValidationError
from ucs_hybrid.optimizers.base import (
    ObjectiveSpec,
    OptimizationResult,
    ProgressCallback,
    clamp,
    start_search,
)
from ucs_hybrid.schemas import SearchConfig

logger = logging.getLogger(__name__)


def sbo_fitness(cost):
    """
    Fitness of a cost value (scalar or array).

    1 / (1 + cost) for cost >= 0 and 1 / (1 + |cost|) for cost < 0, so the
    result lies in (0, 1].

    Raises:
        ValidationError: If any cost is not finite.
    """
    costs = np.asarray(cost, dtype=float)
    if not np.all(np.isfinite(costs)):
        raise ValidationError("cost must be finite", field="cost")
    fitness = 1.0 / (1.0 + np.abs(costs))
    return float(fitness) if fitness.ndim == 0 else fitness


def sbo_probabilities(fitnesses) -> np.ndarray:
    """
    Normalize fitnesses into selection probabilities.

    Raises:
        ValidationError: If the vector is empty or has a non-positive entry.
    """
    fitnesses = np.asarray(fitnesses, dtype=float).ravel()
    if fitnesses.size == 0:
        raise ValidationError("at least one fitness is required", field="fitnesses")
    if not np.all(np.isfinite(fitnesses)) or np.any(fitnesses <= 0):
        raise ValidationError("fitnesses must be finite and > 0", field="fitnesses")
    return fitnesses / fitnesses.sum()


def roulette_select(probabilities, u):
    """
    Smallest index whose cumulative probability exceeds `u`.

    `u` may be an array of draws; an index array of the same shape is
    returned then. Rounding can leave the last cumulative value a hair
    below u; the last index is returned then.
    """
    draws = np.asarray(u, dtype=float)
    if np.any((draws < 0.0) | (draws >= 1.0)):
        raise ValidationError(f"must be in [0, 1), got {u}", field="u")
    cumulative = np.cumsum(np.asarray(probabilities, dtype=float))
    index = np.minimum(np.searchsorted(cumulative, draws, side="right"), cumulative.size - 1)
    return int(index) if index.ndim == 0 else index


def sbo_update_position(
    x_old,
    x_j,
    x_best,
    p_j,
    a: float,
    lower: Optional[np.ndarray] = None,
    upper: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Move a bower toward the midpoint of bower j and the elite.

    x_new = x_old + lambda * ((x_j + x_best) / 2 - x_old), lambda = a / (1 + p_j),
    clamped to [lower, upper] when bounds are given. `p_j` is a scalar or one
    probability per coordinate when each coordinate follows its own bower.

    Raises:
        DimensionError: Vectors of different length.
        ValidationError: p_j outside [0, 1] or a <= 0.
    """
    x_old = np.asarray(x_old, dtype=float)
    x_j = np.asarray(x_j, dtype=float)
    x_best = np.asarray(x_best, dtype=float)
    if x_j.shape != x_old.shape or x_best.shape != x_old.shape:
        raise DimensionError("positions differ in length", expected=x_old.size, actual=x_j.size if x_j.shape != x_old.shape else x_best.size)
    p_j = np.asarray(p_j, dtype=float)
    if p_j.ndim and p_j.shape != x_old.shape:
        raise DimensionError("p_j must be a scalar or match the positions", expected=x_old.size, actual=p_j.size)
    if np.any((p_j < 0.0) | (p_j > 1.0)):
        raise ValidationError(f"must be in [0, 1], got {p_j}", field="p_j")
    if a <= 0:
        raise ValidationError(f"must be > 0, got {a}", field="step_size")
    step = a / (1.0 + p_j)
    x_new = x_old + step * ((x_j + x_best) / 2.0 - x_old)
    if lower is not None and upper is not None:
        x_new = clamp(x_new, lower, upper)
    return x_new


def sbo_mutate(
    x,
    z: float,
    bounds: Tuple[np.ndarray, np.ndarray],
    p_mut: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    Gaussian mutation with sigma = z * (var_max - var_min).

    Each coordinate is replaced by x[k] + sigma[k] * N(0, 1) with probability
    p_mut, then the vector is clamped. Draws D uniforms then D normals
    regardless of how many coordinates mutate.

    Raises:
        ValidationError: z <= 0, p_mut outside [0, 1] or var_max <= var_min.
    """
    if z <= 0:
        raise ValidationError(f"must be > 0, got {z}", field="variance_factor")
    if not 0.0 <= p_mut <= 1.0:
        raise ValidationError(f"must be in [0, 1], got {p_mut}", field="mutation_probability")
    x = np.asarray(x, dtype=float)
    lower = np.broadcast_to(np.asarray(bounds[0], dtype=float), x.shape)
    upper = np.broadcast_to(np.asarray(bounds[1], dtype=float), x.shape)
    if np.any(upper <= lower):
        raise ValidationError("var_max must exceed var_min", field="bounds")
    mask = rng.random(x.size) < p_mut
    noise = rng.standard_normal(x.size)
    sigma = z * (upper - lower)
    return clamp(np.where(mask, x + sigma * noise, x), lower, upper)


def optimize_sbo(
    objective: ObjectiveSpec,
    config: SearchConfig,
    callback: Optional[ProgressCallback] = None,
) -> OptimizationResult:
    """
    Minimize `objective` with the satin bowerbird optimizer.

    Returns:
        (best position, ConvergenceTrace with config.iterations entries)

    Raises:
        ObjectiveEvaluationError: Cost function failed, tagged with the iteration.
    """
    rng = np.random.default_rng(config.seed)
    n = config.population_size
    lower, upper = objective.lower, objective.upper
    evaluator, recorder, positions, costs = start_search(objective, n, rng, callback)

    order = np.argsort(costs, kind="stable")
    positions, costs = positions[order], costs[order]
    columns = np.arange(objective.dimension)

    for t in range(config.iterations):
        probabilities = sbo_probabilities(sbo_fitness(costs))
        elite = positions[0]
        offspring = np.empty_like(positions)
        for i in range(n):
            j = roulette_select(probabilities, rng.random(objective.dimension))
            x = sbo_update_position(
                positions[i], positions[j, columns], elite, probabilities[j], config.step_size, lower, upper
            )
            offspring[i] = sbo_mutate(
                x, config.variance_factor, (lower, upper), config.mutation_probability, rng
            )
        offspring_costs = evaluator.many(offspring, iteration=t + 1)

        merged = np.vstack([positions, offspring])
        merged_costs = np.concatenate([costs, offspring_costs])
        keep = np.argsort(merged_costs, kind="stable")[:n]
        positions, costs = merged[keep], merged_costs[keep]

        recorder.offer(positions[0], costs[0])
        recorder.record(t)

    logger.debug(
        f"SBO on {objective.name} finished: best cost {recorder.best_cost:.6g} "
        f"after {evaluator.evaluations} evaluations"
    )
    return recorder.result()
