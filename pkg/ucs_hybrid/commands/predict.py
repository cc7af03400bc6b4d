"""
`predict`: apply a model file (or the published network) to a CSV
"""
import argparse
import logging

from ucs_hybrid.commands.common import add_output_argument
from ucs_hybrid.config.settings import PREDICTIONS_FILENAME
from ucs_hybrid.services.training_service import predict
from ucs_hybrid.utils.file_storage import ALLOWED_MODEL_EXTENSIONS, get_output_dir, resolve_input_file

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("predict", help="predict UCS for the rows of a CSV")
    parser.add_argument("--model", default=None, help="model JSON written by train/sweep/compare")
    parser.add_argument("--data", required=True, help="CSV with the eight feature columns (UCS optional)")
    parser.add_argument("--output", default=None, help=f"output CSV (default <out>/{PREDICTIONS_FILENAME})")
    parser.add_argument(
        "--frozen", action="store_true",
        help="use the published network on raw, unscaled columns (formula check, not calibrated MPa)",
    )
    add_output_argument(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    model = None
    if not args.frozen and args.model is not None:
        model = resolve_input_file(args.model, "Model file", ALLOWED_MODEL_EXTENSIONS)
    data = resolve_input_file(args.data, "Dataset")
    output = args.output or get_output_dir(args.out) / PREDICTIONS_FILENAME
    path = predict(model, data, output, frozen=args.frozen)
    print(f"Predictions written to {path}")
    return 0
