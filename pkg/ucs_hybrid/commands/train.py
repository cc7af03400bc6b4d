"""
`train`: fit one hybrid and write its model, trace, report and split
"""
import argparse
import logging

from ucs_hybrid.commands.common import (
    ALGORITHM_CHOICES,
    add_data_argument,
    add_output_argument,
    add_seed_argument,
    add_split_argument,
    load_dataset,
    write_hybrid_outputs,
)
from ucs_hybrid.config.search_config import add_search_arguments, search_config_from_args
from ucs_hybrid.config.settings import MODEL_FILENAME, REPORT_FILENAME, TEST_SPLIT_FILENAME, TRAIN_SPLIT_FILENAME
from ucs_hybrid.services.dataset_service import save_csv
from ucs_hybrid.services.metrics_service import export_report_csv
from ucs_hybrid.services.training_service import train_hybrid
from ucs_hybrid.utils.file_storage import get_output_dir

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("train", help="train one ANN hybrid")
    add_data_argument(parser)
    parser.add_argument("--algo", choices=ALGORITHM_CHOICES, default="sbo", help="optimizer (default sbo)")
    add_seed_argument(parser)
    add_split_argument(parser)
    add_output_argument(parser)
    add_search_arguments(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = search_config_from_args(args)
    dataset = load_dataset(args)
    hybrid = train_hybrid(dataset, args.algo, config, seed=config.seed, train_fraction=args.train_fraction)

    out_dir = get_output_dir(args.out)
    write_hybrid_outputs(hybrid, out_dir, MODEL_FILENAME)
    export_report_csv({hybrid.label: hybrid.report}, out_dir / REPORT_FILENAME)
    save_csv(hybrid.train, out_dir / TRAIN_SPLIT_FILENAME)
    save_csv(hybrid.test, out_dir / TEST_SPLIT_FILENAME)

    report = hybrid.report
    print(
        f"{hybrid.label} S_P={config.population_size} T={config.iterations}: "
        f"training RMSE {report.training.rmse:.4f} R {report.training.r:.4f} | "
        f"testing RMSE {report.testing.rmse:.4f} MAPE {report.testing.mape:.2f}% R {report.testing.r:.4f}"
    )
    return 0
