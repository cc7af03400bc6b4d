"""
Test functions for validating the optimizers; every one has its global
minimum 0 (at the origin, or at the all-ones vector for rosenbrock)
"""
from typing import Callable, Dict

import numpy as np


def benchmark_sphere(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.sum(x ** 2))


def benchmark_rastrigin(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(10.0 * x.size + np.sum(x ** 2 - 10.0 * np.cos(2 * np.pi * x)))


def benchmark_rosenbrock(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1 - x[:-1]) ** 2))


def benchmark_ackley(x) -> float:
    x = np.asarray(x, dtype=float)
    d = x.size
    s1 = np.sum(x ** 2)
    s2 = np.sum(np.cos(2 * np.pi * x))
    # can land a few ulps below zero at the origin
    return max(0.0, float(-20.0 * np.exp(-0.2 * np.sqrt(s1 / d)) - np.exp(s2 / d) + 20.0 + np.e))


BENCHMARKS: Dict[str, Callable[[np.ndarray], float]] = {
    "sphere": benchmark_sphere,
    "rastrigin": benchmark_rastrigin,
    "rosenbrock": benchmark_rosenbrock,
    "ackley": benchmark_ackley,
}
