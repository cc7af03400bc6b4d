"""
Vortex search

A single vortex centred at the middle of the box. Each iteration samples
S_P Gaussian candidates around the centre with radius

    sigma_0 * gammaincinv(a_t, x) / x,   a_t = 1 - t / T

(sigma_0 = (var_max - var_min) / 2 per coordinate, a_t the gamma shape,
x a fixed probability level), so the vortex shrinks from about sigma_0
toward zero. Coordinates that leave the box are redrawn uniformly inside
it. The centre jumps to the iteration's best candidate whenever it beats
the best the vortex has seen.

RNG draw order (numpy default_rng(config.seed)):
    1. (S_P, D) uniforms for the initial population
    2. per iteration: (S_P, D) standard normals, then (S_P, D) uniforms
       used for out-of-bound coordinates
"""
import logging
from typing import Optional

import numpy as np
from scipy.special import gammaincinv

from ucs_hybrid.optimizers.base import (
    ObjectiveSpec,
    OptimizationResult,
    ProgressCallback,
    start_search,
)
from ucs_hybrid.schemas import SearchConfig

logger = logging.getLogger(__name__)


def vortex_radius(iteration: int, iterations: int, sigma0: np.ndarray, level: float) -> np.ndarray:
    """Radius at 0-based `iteration` of `iterations`"""
    a = 1.0 - iteration / iterations
    return sigma0 * gammaincinv(a, level) / level


def optimize_vsa(
    objective: ObjectiveSpec,
    config: SearchConfig,
    callback: Optional[ProgressCallback] = None,
) -> OptimizationResult:
    """Minimize `objective` with vortex search"""
    rng = np.random.default_rng(config.seed)
    n = config.population_size
    lower, upper = objective.lower, objective.upper
    evaluator, recorder, _, _ = start_search(objective, n, rng, callback)

    center = (lower + upper) / 2.0
    sigma0 = (upper - lower) / 2.0
    vortex_best = np.inf

    for t in range(config.iterations):
        radius = vortex_radius(t, config.iterations, sigma0, config.vsa_gamma_level)
        candidates = center + radius * rng.standard_normal((n, objective.dimension))
        redraw = rng.uniform(lower, upper, size=(n, objective.dimension))
        outside = (candidates < lower) | (candidates > upper)
        candidates = np.where(outside, redraw, candidates)

        costs = evaluator.many(candidates, iteration=t + 1)
        i = int(np.argmin(costs))
        if costs[i] < vortex_best:
            vortex_best = costs[i]
            center = candidates[i].copy()
        recorder.offer(candidates[i], costs[i])
        recorder.record(t)

    logger.debug(f"VSA on {objective.name} finished: best cost {recorder.best_cost:.6g}")
    return recorder.result()
