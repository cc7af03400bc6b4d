"""
File storage utilities for CLI inputs and result directories
"""
import logging
from pathlib import Path
from typing import Optional, Union

from ucs_hybrid.config.settings import DEFAULT_OUTPUT_DIR, get_trace_filename
from ucs_hybrid.exceptions import ResourceNotFoundError, ValidationError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

ALLOWED_DATA_EXTENSIONS = {".csv"}
ALLOWED_MODEL_EXTENSIONS = {".json"}


def get_output_dir(out: Optional[PathLike] = None, subfolder: Optional[str] = None) -> Path:
    """
    Get (and create) the directory results are written to.

    Args:
        out: Directory given on the command line (defaults to UCS_OUTPUT_DIR)
        subfolder: Optional subfolder, e.g. one per algorithm in a comparison

    Returns:
        Path object for the output directory
    """
    path = Path(out) if out is not None else DEFAULT_OUTPUT_DIR
    if subfolder:
        path = path / subfolder
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        logger.error(f"Failed to create output directory {path}: {e}")
        if path.exists() and not path.is_dir():
            raise ValidationError(f"{path} exists and is not a directory", field="out")
        raise
    return path


def get_trace_path(out_dir: Path, algorithm: str, population_size: int) -> Path:
    """Path of the convergence trace CSV for one (algorithm, S_P) pair"""
    return out_dir / get_trace_filename(algorithm, population_size)


def resolve_input_file(path: PathLike, resource_type: str, allowed_extensions=ALLOWED_DATA_EXTENSIONS) -> Path:
    """
    Check that an input file exists and has an accepted extension.

    Raises:
        ResourceNotFoundError: The file does not exist.
        ValidationError: Unsupported extension.
    """
    path = Path(path)
    if not path.is_file():
        raise ResourceNotFoundError(resource_type, str(path))
    if path.suffix.lower() not in allowed_extensions:
        allowed = ", ".join(sorted(allowed_extensions))
        raise ValidationError(f"{path.name}: expected one of {allowed}", field=resource_type.lower())
    return path
