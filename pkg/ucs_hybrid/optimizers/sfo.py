"""
Sunflower optimization

Plants are ranked by cost and turn toward the sun, the best plant. The
radiation a plant receives falls with the inverse square of its distance
r_i to the sun, so its orientation is the unit vector s_i = (sun - X_i) / r_i
and it steps along s_i by

    d_i = min(lambda * u_i * ||X_i - X_{i-1}||, d_max)

where X_{i-1} is the plant ranked just above it, u_i ~ U(0, 1) and
d_max = ||Var_max - Var_min|| / (2 * S_P). A plant keeps its new position
only when it lowers its cost. The sun never moves.

The worst m * S_P plants die and are replaced by pollinated seeds,

    sun + f * (X_a - X_b)

where X_a is one of the p * S_P best plants, X_b any plant and f ~ U(0, 1).

RNG draw order (numpy default_rng(config.seed)):
    1. (S_P, D) uniforms for the initial population
    2. per iteration: one uniform per surviving plant below the sun (rank
       order), then per seed in rank order: index a, index b, factor f
"""
import logging
import math
from typing import Optional

import numpy as np

from ucs_hybrid.optimizers.base import (
    ObjectiveSpec,
    OptimizationResult,
    ProgressCallback,
    clamp,
    start_search,
)
from ucs_hybrid.schemas import SearchConfig

logger = logging.getLogger(__name__)


def max_step(lower: np.ndarray, upper: np.ndarray, population_size: int) -> float:
    """d_max, the longest step a plant may take in one iteration"""
    return float(np.linalg.norm(upper - lower)) / (2 * population_size)


def _survivor_steps(
    positions: np.ndarray, u: np.ndarray, step_factor: float, step_cap: float
) -> np.ndarray:
    """
    Displacement of each plant toward the sun.

    `positions` are sorted best first. Row 0 is the sun; its step is zero.
    """
    sun = positions[0]
    delta = sun - positions
    distance = np.linalg.norm(delta, axis=1)
    neighbour = np.zeros_like(distance)
    neighbour[1:] = np.linalg.norm(positions[1:] - positions[:-1], axis=1)
    length = np.minimum(step_factor * u * neighbour, step_cap)

    steps = np.zeros_like(positions)
    moving = distance > 0
    steps[moving] = (length[moving] / distance[moving])[:, None] * delta[moving]
    return steps


def optimize_sfo(
    objective: ObjectiveSpec,
    config: SearchConfig,
    callback: Optional[ProgressCallback] = None,
) -> OptimizationResult:
    """Minimize `objective` with sunflower optimization"""
    rng = np.random.default_rng(config.seed)
    n = config.population_size
    lower, upper = objective.lower, objective.upper
    evaluator, recorder, positions, costs = start_search(objective, n, rng, callback)

    n_mortal = min(n - 1, math.ceil(config.sfo_mortality_rate * n))
    n_pollinators = min(n, max(1, math.ceil(config.sfo_pollination_rate * n)))
    n_survivors = n - n_mortal
    step_cap = max_step(lower, upper, n)

    for t in range(config.iterations):
        order = np.argsort(costs, kind="stable")
        positions, costs = positions[order], costs[order]
        sun = positions[0]

        u = np.concatenate(([0.0], rng.random(n_survivors - 1)))
        survivors = positions[:n_survivors]
        moved = clamp(survivors + _survivor_steps(survivors, u, config.sfo_step_factor, step_cap), lower, upper)[1:]

        seeds = np.empty((n_mortal, objective.dimension))
        for k in range(n_mortal):
            a = rng.integers(n_pollinators)
            b = rng.integers(n)
            f = rng.random()
            seeds[k] = sun + f * (positions[a] - positions[b])
        seeds = clamp(seeds, lower, upper)

        candidate_costs = evaluator.many(np.vstack([moved, seeds]), iteration=t + 1)
        moved_costs = candidate_costs[: n_survivors - 1]

        keep = moved_costs < costs[1:n_survivors]
        positions[1:n_survivors] = np.where(keep[:, None], moved, positions[1:n_survivors])
        costs[1:n_survivors] = np.where(keep, moved_costs, costs[1:n_survivors])
        positions[n_survivors:] = seeds
        costs[n_survivors:] = candidate_costs[n_survivors - 1 :]

        recorder.offer_population(positions, costs)
        recorder.record(t)

    logger.debug(f"SFO on {objective.name} finished: best cost {recorder.best_cost:.6g}")
    return recorder.result()
