"""
Run logging service for optimizer runs.

Every training run gets an id; its start, periodic progress and outcome go
to the log under that id. Runs inside sweep/compare worker processes log
from their own process, so no state is shared between runs.
"""
from typing import Callable, Optional
import logging
import time
import uuid

from ucs_hybrid.config.settings import PROGRESS_EVERY

logger = logging.getLogger(__name__)


def start_run(algorithm: str, population_size: int, iterations: int, seed: int) -> str:
    """
    Log the start of a run.

    Returns:
        run_id: Unique identifier for the run
    """
    run_id = f"run_{algorithm}_sp{population_size}_{uuid.uuid4().hex[:8]}"
    logger.info(f"Started run {run_id} (S_P={population_size}, T={iterations}, seed={seed})")
    return run_id


def complete_run(run_id: str, best_cost: float, started_at: Optional[float] = None) -> None:
    elapsed = "" if started_at is None else f" in {time.monotonic() - started_at:.1f}s"
    logger.info(f"Completed run {run_id}: best cost {best_cost:.6g}{elapsed}")


def fail_run(run_id: str, error: str) -> None:
    logger.warning(f"Run {run_id} failed: {error}")


def progress_callback(run_id: str, every: int = PROGRESS_EVERY) -> Callable[[int, float], None]:
    """
    Optimizer callback logging the best cost every `every` iterations.

    Iterations passed in are 0-based; the log shows 1-based counts.
    """
    every = max(1, every)

    def report(iteration: int, best_cost: float) -> None:
        done = iteration + 1
        if done % every == 0:
            logger.info(f"{run_id}: iteration {done} best cost {best_cost:.6g}")

    return report
