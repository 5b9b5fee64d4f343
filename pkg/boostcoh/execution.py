import os
import json
import logging
from datetime import datetime
from typing import Any, Dict, Optional

import toml

from .basics import InvalidConfigError
from .srdm import QuadratureConfig, QuadratureScheme
from .sweep import SweepConfig


# Keys accepted in configuration files besides the command-line destinations
QUAD_FILE_KEYS = {
    "quad_scheme": "scheme",
    "quad_order": "order",
    "quad_order_3d": "order_3d",
    "max_refinements": "max_refinements",
    "max_depth": "max_depth",
    "rel_tol": "rel_tol",
    "window": "window",
}
SWEEP_KEYS = (
    "scenario",
    "mass",
    "center",
    "alpha",
    "sigma",
    "measures",
    "format",
    "out",
    "heatmap",
    "workers",
)
LOGGING_KEYS = ("log_dir", "log_prefix")
CONFIG_KEYS = SWEEP_KEYS + tuple(QUAD_FILE_KEYS) + LOGGING_KEYS

DEFAULT_LOG_DIR = "none"
DEFAULT_LOG_PREFIX = "sweep"


def setup_logging(
    log_dir: str, log_prefix: str, logger_name: str, level: int = logging.INFO
) -> logging.Logger:
    """
    Set up logging to stderr and, unless log_dir is "none", to a file.

    Args:
        log_dir (str): Directory to save the log file, or "none".
        log_prefix (str): Prefix of console messages and of the log file name.
        logger_name (str): Unique name for the logger.
        level (int): Logging level of both handlers.
    """
    logger = logging.getLogger(logger_name)
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)
        handler.close()
    logger.setLevel(level)
    logger.propagate = False

    ch = logging.StreamHandler()
    ch.setLevel(level)
    ch.setFormatter(logging.Formatter(f"{log_prefix} - %(levelname)s - %(message)s"))
    logger.addHandler(ch)

    if log_dir.lower() != "none":
        os.makedirs(log_dir, exist_ok=True)
        str_current_time = datetime.now().strftime("%Y-%m-%d%H-%M-%S")
        log_file = os.path.join(log_dir, f"{log_prefix}_{str_current_time}.log")
        fh = logging.FileHandler(log_file)
        fh.setLevel(level)
        fh.setFormatter(logging.Formatter("%(asctime)s - %(levelname)s - %(message)s"))
        logger.addHandler(fh)
    return logger


def _flatten(
    config: Dict[str, Any], path: str, logger: logging.Logger
) -> Dict[str, Any]:
    flat = {}
    for key, value in config.items():
        if isinstance(value, dict):
            # Sections only group keys
            items = value.items()
        else:
            items = [(key, value)]
        for flat_key, flat_value in items:
            if isinstance(flat_value, dict):
                raise InvalidConfigError(
                    f"Nested section {flat_key!r} in {path} is too deep"
                )
            if flat_key not in CONFIG_KEYS:
                logger.warning(f"Key {flat_key} in {path} is not a valid argument.")
                continue
            flat[flat_key] = flat_value
    return flat


def load_config_file(
    path: str, logger: Optional[logging.Logger] = None
) -> Dict[str, Any]:
    """
    Read a TOML (.toml) or JSON (any other suffix) configuration file.

    Sections are flattened; unknown keys are reported and dropped.

    Raises:
        InvalidConfigError: If the file cannot be read or parsed.
    """
    if logger is None:
        logger = logging.getLogger()
    try:
        with open(path, "r") as f:
            if path.lower().endswith(".toml"):
                config = toml.load(f)
            else:
                config = json.load(f)
    except (OSError, ValueError, toml.TomlDecodeError) as e:
        raise InvalidConfigError(f"Error loading config from {path}: {e}") from e
    if not isinstance(config, dict):
        raise InvalidConfigError(f"{path} must contain a single object of settings")
    return _flatten(config, path, logger)


def merge_settings(
    args, explicit_args: Dict[str, Any], logger: Optional[logging.Logger] = None
) -> Dict[str, Any]:
    """Defaults (None) < config file < explicit command-line arguments."""
    settings = {key: None for key in CONFIG_KEYS}
    if getattr(args, "config", None):
        settings.update(load_config_file(args.config, logger))
    for key, value in explicit_args.items():
        if key in settings:
            settings[key] = value
    return settings


def build_quad_config(settings: Dict[str, Any]) -> QuadratureConfig:
    kwargs = {}
    for key, attribute in QUAD_FILE_KEYS.items():
        value = settings.get(key)
        if value is None:
            continue
        if attribute == "scheme":
            try:
                value = QuadratureScheme(value)
            except ValueError:
                raise InvalidConfigError(f"Unknown quadrature scheme {value!r}")
        kwargs[attribute] = value
    return QuadratureConfig(**kwargs)


def build_sweep_config(settings: Dict[str, Any]) -> SweepConfig:
    """
    Turn merged settings into a validated SweepConfig, filling scenario
    defaults for everything left unset.

    Raises:
        InvalidConfigError: For any unusable value.
    """
    try:
        return SweepConfig.from_options(
            scenario=settings.get("scenario") or "case1-zero",
            mass=settings.get("mass"),
            center=settings.get("center"),
            alpha=settings.get("alpha"),
            sigma=settings.get("sigma"),
            measures=settings.get("measures"),
            quad=build_quad_config(settings),
            format=settings.get("format"),
            out=settings.get("out"),
            heatmap=settings.get("heatmap"),
            workers=settings.get("workers"),
        )
    except InvalidConfigError:
        raise
    except (TypeError, ValueError) as e:
        raise InvalidConfigError(f"Invalid configuration: {e}") from e
