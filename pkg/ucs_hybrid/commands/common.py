"""
Arguments and helpers shared by the subcommands
"""
import argparse
import logging
from pathlib import Path

from ucs_hybrid.config.settings import DEFAULT_TRAIN_FRACTION, MAX_WORKERS
from ucs_hybrid.optimizers import export_trace_csv
from ucs_hybrid.schemas import Algorithm
from ucs_hybrid.services.dataset_service import Dataset, load_csv
from ucs_hybrid.services.network_service import save_model
from ucs_hybrid.services.training_service import TrainedHybrid
from ucs_hybrid.utils.file_storage import get_trace_path, resolve_input_file

logger = logging.getLogger(__name__)

ALGORITHM_CHOICES = [a.value for a in Algorithm]


def add_data_argument(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--data", required=required, help="CSV with header CSC,TSC,CA,DMAX,SPC,FM,WB,SR,UCS")


def add_output_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None, help="output directory (default $UCS_OUTPUT_DIR or ./results)")


def add_seed_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="seed for the split and the optimizer")


def add_split_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--train-fraction", type=float, default=DEFAULT_TRAIN_FRACTION,
        help=f"share of records used for training (default {DEFAULT_TRAIN_FRACTION})",
    )


def add_workers_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--workers", type=int, default=MAX_WORKERS,
        help="worker processes for concurrent runs (default $UCS_MAX_WORKERS or 1)",
    )


def load_dataset(args: argparse.Namespace) -> Dataset:
    return load_csv(resolve_input_file(args.data, "Dataset"))


def write_hybrid_outputs(hybrid: TrainedHybrid, out_dir: Path, model_name: str) -> None:
    """Model JSON and convergence trace of one trained hybrid"""
    save_model(hybrid.to_model_file(), out_dir / model_name)
    export_trace_csv(
        hybrid.trace,
        get_trace_path(out_dir, hybrid.algorithm.value, hybrid.config.population_size),
    )
