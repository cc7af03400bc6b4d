"""
Population-based derivative-free minimizers sharing one contract
(see optimizers.base)
"""
import logging
from pathlib import Path
from typing import Callable, Dict, Optional, Union

import pandas as pd

from ucs_hybrid.exceptions import ValidationError
from ucs_hybrid.optimizers.base import ObjectiveSpec, OptimizationResult, ProgressCallback
from ucs_hybrid.optimizers.hgso import optimize_hgso
from ucs_hybrid.optimizers.sbo import optimize_sbo
from ucs_hybrid.optimizers.sfo import optimize_sfo
from ucs_hybrid.optimizers.vsa import optimize_vsa
from ucs_hybrid.schemas import Algorithm, ConvergenceTrace, SearchConfig

logger = logging.getLogger(__name__)

Optimizer = Callable[..., OptimizationResult]

ALGORITHMS: Dict[Algorithm, Optimizer] = {
    Algorithm.SBO: optimize_sbo,
    Algorithm.HGSO: optimize_hgso,
    Algorithm.SFO: optimize_sfo,
    Algorithm.VSA: optimize_vsa,
}


def get_algorithm(name: Union[str, Algorithm]) -> Algorithm:
    """
    Resolve an algorithm name case-insensitively.

    Raises:
        ValidationError: Unknown name.
    """
    if isinstance(name, Algorithm):
        return name
    try:
        return Algorithm(str(name).strip().lower())
    except ValueError:
        choices = ", ".join(a.value for a in Algorithm)
        raise ValidationError(f"unknown algorithm {name!r} (choose from {choices})", field="algorithm")


def run_optimizer(
    algorithm: Union[str, Algorithm],
    objective: ObjectiveSpec,
    config: SearchConfig,
    callback: Optional[ProgressCallback] = None,
) -> OptimizationResult:
    """Dispatch to the optimize function registered for `algorithm`"""
    algorithm = get_algorithm(algorithm)
    logger.info(
        f"Running {algorithm.name} on {objective.name} (D={objective.dimension}, "
        f"S_P={config.population_size}, T={config.iterations}, seed={config.seed})"
    )
    return ALGORITHMS[algorithm](objective, config, callback)


def export_trace_csv(trace: ConvergenceTrace, path: Union[str, Path]) -> Path:
    """Write `iteration,best_cost` rows, iterations numbered from 1"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame({
        "iteration": range(1, trace.iterations + 1),
        "best_cost": trace.best_costs,
    })
    frame.to_csv(path, index=False, lineterminator="\n")
    logger.debug(f"Wrote {trace.iterations}-iteration trace to {path}")
    return path


__all__ = [
    "ALGORITHMS",
    "ObjectiveSpec",
    "ProgressCallback",
    "export_trace_csv",
    "get_algorithm",
    "run_optimizer",
]
