"""
Application-wide configuration settings

This module centralizes the defaults used by the dataset, network,
optimizer and pipeline layers. All magic numbers and strings are defined
here as constants.

To customize settings:
1. Set the matching environment variable (runtime-tunable values only)
2. Or pass a key=value config file / CLI flag (search parameters)
3. Or modify the constants below
"""

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# ============================================================================
# DATASET SETTINGS
# ============================================================================

# Canonical CSV header, in order
FEATURE_COLUMNS = ("CSC", "TSC", "CA", "DMAX", "SPC", "FM", "WB", "SR")
TARGET_COLUMN = "UCS"
CSV_COLUMNS = FEATURE_COLUMNS + (TARGET_COLUMN,)

# Column name of predicted values in `predict` output
PREDICTION_COLUMN = "UCS_PRED"

# Units, as printed in the summary table (FM treated as dimensionless)
COLUMN_UNITS = {
    "CSC": "MPa",
    "TSC": "MPa",
    "CA": "Day",
    "DMAX": "mm",
    "SPC": "%",
    "FM": "-",
    "WB": "-",
    "SR": "%",
    "UCS": "MPa",
}

# Minimum curing age (days)
MIN_CURING_AGE = 1.0

# Share of samples used for training (258 of 323)
DEFAULT_TRAIN_FRACTION = 0.8

# Minimum dataset size accepted by train_hybrid
MIN_TRAINING_RECORDS = 10

# Synthetic surrogate dataset
DEFAULT_SYNTHETIC_SIZE = 323
DEFAULT_SYNTHETIC_NOISE_STD = 2.0  # MPa

# ============================================================================
# NETWORK SETTINGS
# ============================================================================

# 8 inputs -> 4 tansig hidden neurons -> 1 linear output
DEFAULT_NETWORK_SHAPE = (8, 4, 1)

# Target range used by the target scaler
TARGET_SCALED_MIN = -1.0
TARGET_SCALED_MAX = 1.0

# ============================================================================
# SEARCH SETTINGS
# ============================================================================

# Population sizes tried by the sweep
DEFAULT_POPULATION_SIZES = (10, 50, 100, 200, 300, 400, 500)
DEFAULT_POPULATION_SIZE = 50
DEFAULT_ITERATIONS = 1000
DEFAULT_SEED = 0

# Box bounds for every network weight/bias
WEIGHT_BOUND_MIN = -2.0
WEIGHT_BOUND_MAX = 2.0

# Satin bowerbird optimizer
SBO_STEP_SIZE = 0.94  # a, greatest step size
SBO_MUTATION_PROBABILITY = 0.05
SBO_VARIANCE_FACTOR = 0.02  # z

# Henry gas solubility optimization
HGSO_CLUSTERS = 5
HGSO_L1 = 5e-3
HGSO_L2 = 100.0
HGSO_L3 = 1e-2
HGSO_ALPHA = 1.0
HGSO_BETA = 1.0
HGSO_K = 1.0
HGSO_EPSILON = 0.05
HGSO_WORST_MIN_FRACTION = 0.1  # c1
HGSO_WORST_MAX_FRACTION = 0.2  # c2
HGSO_REFERENCE_TEMPERATURE = 298.15

# Sunflower optimization
SFO_POLLINATION_RATE = 0.05
SFO_MORTALITY_RATE = 0.1
SFO_STEP_FACTOR = 1.0  # lambda

# Vortex search
VSA_GAMMA_LEVEL = 0.1  # x, probability level of the inverse incomplete gamma schedule

# ============================================================================
# RUNTIME SETTINGS
# ============================================================================

LOG_LEVEL = os.getenv("UCS_LOG_LEVEL", "INFO")
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# Worker processes for sweep/comparison (1 = sequential, bit-reproducible)
MAX_WORKERS = int(os.getenv("UCS_MAX_WORKERS", "1"))

# Log optimizer progress every N iterations
PROGRESS_EVERY = int(os.getenv("UCS_PROGRESS_EVERY", "100"))

DEFAULT_OUTPUT_DIR = Path(os.getenv("UCS_OUTPUT_DIR", "results"))

# ============================================================================
# OUTPUT FILE NAMES
# ============================================================================

MODEL_FILENAME = "model.json"
REPORT_FILENAME = "report.csv"
SWEEP_FILENAME = "sweep.csv"
SUMMARY_FILENAME = "summary.csv"
TRAIN_SPLIT_FILENAME = "train.csv"
TEST_SPLIT_FILENAME = "test.csv"
SYNTHETIC_FILENAME = "synthetic.csv"
PREDICTIONS_FILENAME = "predictions.csv"


def get_trace_filename(algorithm: str, population_size: int) -> str:
    """
    Get the trace CSV filename for one (algorithm, population size) pair.

    Returns:
        Filename such as ``trace_sbo_sp50.csv``
    """
    return f"trace_{algorithm.lower()}_sp{population_size}.csv"
