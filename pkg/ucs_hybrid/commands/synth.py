"""
`synth`: generate a planted surrogate dataset
"""
import argparse
import logging

from ucs_hybrid.commands.common import add_output_argument, add_seed_argument
from ucs_hybrid.config.settings import DEFAULT_SEED, DEFAULT_SYNTHETIC_NOISE_STD, DEFAULT_SYNTHETIC_SIZE, SYNTHETIC_FILENAME
from ucs_hybrid.services.dataset_service import load_csv, save_csv, summarize, synthesize, published_summary
from ucs_hybrid.utils.file_storage import get_output_dir, resolve_input_file

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("synth", help="generate a synthetic dataset with a planted network")
    parser.add_argument("--n", type=int, default=DEFAULT_SYNTHETIC_SIZE, help="number of records")
    parser.add_argument(
        "--noise", type=float, default=DEFAULT_SYNTHETIC_NOISE_STD, help="Gaussian noise std on UCS (MPa)",
    )
    parser.add_argument(
        "--data", default=None,
        help="take feature/UCS ranges from this CSV instead of the published statistics",
    )
    add_seed_argument(parser)
    add_output_argument(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    if args.data:
        summary = summarize(load_csv(resolve_input_file(args.data, "Dataset")))
    else:
        summary = published_summary()
    seed = DEFAULT_SEED if args.seed is None else args.seed
    dataset = synthesize(summary, args.n, seed, noise_std=args.noise)
    path = save_csv(dataset, get_output_dir(args.out) / SYNTHETIC_FILENAME)
    print(f"{len(dataset)} synthetic records written to {path}")
    return 0
