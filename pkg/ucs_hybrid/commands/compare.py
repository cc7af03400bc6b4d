"""
`compare`: train several hybrids on one split and rank them
"""
import argparse
import logging

from ucs_hybrid.commands.common import (
    add_data_argument,
    add_output_argument,
    add_seed_argument,
    add_split_argument,
    add_workers_argument,
    load_dataset,
    write_hybrid_outputs,
)
from ucs_hybrid.config.reference_tables import SELECTED_POPULATION_SIZES
from ucs_hybrid.config.search_config import add_search_arguments, search_config_from_args
from ucs_hybrid.config.settings import REPORT_FILENAME
from ucs_hybrid.exceptions import TrainingError, ValidationError
from ucs_hybrid.optimizers import get_algorithm
from ucs_hybrid.services.metrics_service import export_report_csv
from ucs_hybrid.services.training_service import compare_algorithms
from ucs_hybrid.utils.file_storage import get_output_dir

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("compare", help="compare algorithms on a shared split")
    add_data_argument(parser)
    parser.add_argument("--algos", default="sbo,hgso,sfo,vsa", help="comma-separated algorithms (at least two)")
    parser.add_argument(
        "--published-sizes", action="store_true",
        help="use each algorithm's published population size instead of --pop",
    )
    add_seed_argument(parser)
    add_split_argument(parser)
    add_workers_argument(parser)
    add_output_argument(parser)
    add_search_arguments(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = search_config_from_args(args)
    algorithms = [get_algorithm(name) for name in args.algos.split(",") if name.strip()]
    if len(set(algorithms)) != len(algorithms):
        raise ValidationError("algorithms must be distinct", field="algos")
    configs = {}
    for algorithm in algorithms:
        if args.published_sizes:
            configs[algorithm] = config.model_copy(
                update={"population_size": SELECTED_POPULATION_SIZES[algorithm.name]}
            )
        else:
            configs[algorithm] = config

    dataset = load_dataset(args)
    comparison = compare_algorithms(
        dataset, configs, seed=config.seed, train_fraction=args.train_fraction, workers=args.workers
    )

    out_dir = get_output_dir(args.out)
    export_report_csv(comparison.reports, out_dir / REPORT_FILENAME, footer=comparison.footer_lines())
    for algorithm, hybrid in comparison.hybrids.items():
        write_hybrid_outputs(hybrid, out_dir, f"model_{algorithm.value}.json")

    for position, algorithm in enumerate(comparison.ranking, start=1):
        testing = comparison.hybrids[algorithm].report.testing
        print(f"{position}. {algorithm.label}: testing RMSE {testing.rmse:.4f} R {testing.r:.4f}")
    for line in comparison.footer_lines():
        if line.startswith(("dominance", "failed")):
            print(line)

    if not comparison.hybrids:
        raise TrainingError("every algorithm failed; see " + str(out_dir / REPORT_FILENAME))
    return 0
