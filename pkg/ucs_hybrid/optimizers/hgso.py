"""
Henry gas solubility optimization

Agents are gas particles split round-robin into clusters. Each cluster has
a Henry coefficient H_j and a constant C_j; each agent has a partial
pressure P_i. Per iteration:

    T        = exp(-t / T_max)
    H_j      = H_j * exp(-C_j * (1/T - 1/T_ref))
    S_i      = K * H_j * P_i                         (solubility)
    gamma_i  = beta * exp(-(F_bj + eps) / (F_i + eps))
    X_i     += F * r * gamma_i * (X_bj - X_i) + F * r * alpha * (S_i * X_best - X_i)

with F = +-1 and r ~ U(0, 1) drawn per agent, X_bj the best agent of the
cluster and X_best the incumbent. Afterwards the N_w = N * U(c1, c2) worst
agents are re-initialized uniformly.

RNG draw order (numpy default_rng(config.seed)):
    1. (S_P, D) uniforms for the initial population
    2. n_clusters uniforms for H, S_P for P, n_clusters for C
    3. per iteration: S_P sign draws, S_P uniforms for r, one uniform for
       N_w, then (N_w, D) uniforms for the re-initialized agents
"""
import logging
from typing import Optional

import numpy as np

from ucs_hybrid.config.settings import HGSO_REFERENCE_TEMPERATURE
from ucs_hybrid.optimizers.base import (
    ObjectiveSpec,
    OptimizationResult,
    ProgressCallback,
    clamp,
    start_search,
)
from ucs_hybrid.schemas import SearchConfig

logger = logging.getLogger(__name__)


def _cluster_bests(costs: np.ndarray, cluster_of: np.ndarray, n_clusters: int):
    """Index of the lowest-cost agent of every cluster"""
    best = np.empty(n_clusters, dtype=np.int64)
    for j in range(n_clusters):
        members = np.flatnonzero(cluster_of == j)
        best[j] = members[np.argmin(costs[members])]
    return best


def optimize_hgso(
    objective: ObjectiveSpec,
    config: SearchConfig,
    callback: Optional[ProgressCallback] = None,
) -> OptimizationResult:
    """Minimize `objective` with Henry gas solubility optimization"""
    rng = np.random.default_rng(config.seed)
    n = config.population_size
    lower, upper = objective.lower, objective.upper
    evaluator, recorder, positions, costs = start_search(objective, n, rng, callback)

    n_clusters = min(config.hgso_clusters, n)
    cluster_of = np.arange(n) % n_clusters
    henry = config.hgso_l1 * rng.random(n_clusters)
    pressure = config.hgso_l2 * rng.random(n)
    constant = config.hgso_l3 * rng.random(n_clusters)
    eps = config.hgso_epsilon

    for t in range(config.iterations):
        temperature = np.exp(-(t + 1) / config.iterations)
        henry = henry * np.exp(-constant * (1.0 / temperature - 1.0 / HGSO_REFERENCE_TEMPERATURE))
        solubility = config.hgso_k * henry[cluster_of] * pressure

        bests = _cluster_bests(costs, cluster_of, n_clusters)
        cluster_best = positions[bests][cluster_of]
        cluster_best_cost = costs[bests][cluster_of]
        gamma = config.hgso_beta * np.exp(-(cluster_best_cost + eps) / (costs + eps))

        sign = rng.choice(np.array([-1.0, 1.0]), size=n)
        r = rng.random(n)
        incumbent = recorder.best_position
        moved = (
            positions
            + (sign * r * gamma)[:, None] * (cluster_best - positions)
            + (sign * r * config.hgso_alpha)[:, None] * (solubility[:, None] * incumbent - positions)
        )
        moved = clamp(moved, lower, upper)
        moved_costs = evaluator.many(moved, iteration=t + 1)

        fraction = rng.random() * (config.hgso_worst_max_fraction - config.hgso_worst_min_fraction)
        n_worst = int(n * (fraction + config.hgso_worst_min_fraction))
        if n_worst > 0:
            worst = np.argsort(-moved_costs, kind="stable")[:n_worst]
            moved[worst] = rng.uniform(lower, upper, size=(n_worst, objective.dimension))
            moved_costs[worst] = evaluator.many(moved[worst], iteration=t + 1)

        positions, costs = moved, moved_costs
        recorder.offer_population(positions, costs)
        recorder.record(t)

    logger.debug(f"HGSO on {objective.name} finished: best cost {recorder.best_cost:.6g}")
    return recorder.result()
