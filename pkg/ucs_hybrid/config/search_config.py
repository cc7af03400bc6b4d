"""
SearchConfig loading

Precedence: SearchConfig defaults < key=value config file < CLI flags.
The config file is parsed with python-dotenv, so it accepts the same
syntax as a .env file (comments, quoting, `export` prefixes). Keys are
SearchConfig field names, matched case-insensitively.
"""
import argparse
import logging
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

import pydantic
from dotenv import dotenv_values

from ucs_hybrid.exceptions import ResourceNotFoundError, ValidationError
from ucs_hybrid.schemas import SearchConfig

logger = logging.getLogger(__name__)

# Short flags for the most used fields
FLAG_ALIASES = {
    "population_size": ("--pop",),
    "iterations": ("--iters",),
}


def read_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """
    Parse a key=value file into lowercase keys.

    Raises:
        ResourceNotFoundError: File missing.
        ValidationError: A key has no value.
    """
    path = Path(path)
    if not path.is_file():
        raise ResourceNotFoundError("Config file", str(path))
    values = {}
    for key, value in dotenv_values(path).items():
        if value is None:
            raise ValidationError(f"{path.name}: key without a value", field=key)
        values[key.strip().lower()] = value.strip()
    return values


def build_search_config(
    config_file: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> SearchConfig:
    """
    Merge defaults, the config file and overrides into a SearchConfig.

    Overrides set to None are ignored.

    Raises:
        ValidationError: Unknown key or out-of-range value, naming the field.
    """
    values: Dict[str, Any] = {}
    if config_file is not None:
        values.update(read_config_file(config_file))
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    try:
        config = SearchConfig(**values)
    except pydantic.ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"]) or None
        raise ValidationError(error["msg"], field=field) from e
    logger.debug(f"Search config: {config.model_dump()}")
    return config


def _flag_type(annotation):
    return int if annotation is int else float


def add_search_arguments(parser: argparse.ArgumentParser) -> None:
    """
    Add --config plus one flag per SearchConfig field (e.g. --step-size,
    --hgso-clusters), with --pop and --iters as short forms.
    """
    group = parser.add_argument_group("search configuration")
    group.add_argument("--config", dest="config_file", help="key=value file of SearchConfig fields")
    for name, info in SearchConfig.model_fields.items():
        flags = ("--" + name.replace("_", "-"),) + FLAG_ALIASES.get(name, ())
        if name == "seed":
            # --seed is a common flag that drives both the split and the optimizer
            continue
        group.add_argument(
            *flags,
            dest=name,
            type=_flag_type(info.annotation),
            default=None,
            help=f"{info.description or name} (default {info.default})",
        )


def search_config_from_args(args: argparse.Namespace) -> SearchConfig:
    """Build the SearchConfig for parsed CLI arguments"""
    overrides = {name: getattr(args, name, None) for name in SearchConfig.model_fields}
    return build_search_config(getattr(args, "config_file", None), overrides)
