"""
`summarize`: descriptive statistics in the published table layout
"""
import argparse
import logging

from ucs_hybrid.commands.common import add_output_argument
from ucs_hybrid.config.settings import SUMMARY_FILENAME
from ucs_hybrid.services.dataset_service import (
    export_summary_csv,
    load_csv,
    summarize,
    summary_frame,
    published_summary,
)
from ucs_hybrid.exceptions import ValidationError
from ucs_hybrid.utils.file_storage import get_output_dir, resolve_input_file

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("summarize", help="mean, SE, variance, min and max per column")
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--data", default=None, help="dataset CSV to summarize")
    source.add_argument("--reference", action="store_true", help="export the published statistics instead")
    add_output_argument(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    if args.reference:
        summary = published_summary()
    elif args.data:
        summary = summarize(load_csv(resolve_input_file(args.data, "Dataset")))
    else:
        raise ValidationError("give --data or --reference", field="data")
    path = export_summary_csv(summary, get_output_dir(args.out) / SUMMARY_FILENAME)
    print(summary_frame(summary).to_string(index=False))
    print(f"\nSummary of {summary.n} records written to {path}")
    return 0
