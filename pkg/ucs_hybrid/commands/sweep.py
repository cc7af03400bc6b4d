"""
`sweep`: train one algorithm at several population sizes
"""
import argparse
import logging
from typing import List

from ucs_hybrid.commands.common import (
    ALGORITHM_CHOICES,
    add_data_argument,
    add_output_argument,
    add_seed_argument,
    add_split_argument,
    add_workers_argument,
    load_dataset,
    write_hybrid_outputs,
)
from ucs_hybrid.config.search_config import add_search_arguments, search_config_from_args
from ucs_hybrid.config.settings import DEFAULT_POPULATION_SIZES, MODEL_FILENAME, SWEEP_FILENAME
from ucs_hybrid.exceptions import ValidationError
from ucs_hybrid.services.training_service import export_sweep_csv, population_sweep
from ucs_hybrid.utils.file_storage import get_output_dir

logger = logging.getLogger(__name__)


def parse_sizes(text: str) -> List[int]:
    """'10,50,100' -> [10, 50, 100]"""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValidationError(f"expected comma-separated integers, got {text!r}", field="sizes")


def register(subparsers) -> None:
    parser = subparsers.add_parser("sweep", help="population-size sweep for one algorithm")
    add_data_argument(parser)
    parser.add_argument("--algo", choices=ALGORITHM_CHOICES, default="sbo", help="optimizer (default sbo)")
    parser.add_argument(
        "--sizes", default=",".join(str(s) for s in DEFAULT_POPULATION_SIZES),
        help="comma-separated population sizes",
    )
    add_seed_argument(parser)
    add_split_argument(parser)
    add_workers_argument(parser)
    add_output_argument(parser)
    add_search_arguments(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = search_config_from_args(args)
    dataset = load_dataset(args)
    sweep = population_sweep(
        dataset,
        args.algo,
        parse_sizes(args.sizes),
        config,
        seed=config.seed,
        train_fraction=args.train_fraction,
        workers=args.workers,
    )

    out_dir = get_output_dir(args.out)
    export_sweep_csv(sweep, out_dir / SWEEP_FILENAME)
    for size, hybrid in sweep.hybrids.items():
        name = MODEL_FILENAME if size == sweep.best_size else f"model_sp{size}.json"
        write_hybrid_outputs(hybrid, out_dir, name)

    for size, report in sweep.reports.items():
        marker = "*" if size == sweep.best_size else " "
        print(
            f"{marker} S_P={size:<4d} training RMSE {report.training.rmse:.4f} "
            f"testing RMSE {report.testing.rmse:.4f}"
        )
    return 0
