import logging
from typing import List, Optional

from .basics import CellQuadratureError, InvalidConfigError, QuadratureError
from .emit import write_outputs
from .execution import (
    DEFAULT_LOG_DIR,
    DEFAULT_LOG_PREFIX,
    build_sweep_config,
    merge_settings,
    setup_logging,
)
from .parse_arguments import parse_arguments
from .sweep import run_sweep


EXIT_OK = 0
EXIT_INVALID_CONFIG = 2
EXIT_QUADRATURE_FAILURE = 3


def main(argv: Optional[List[str]] = None) -> int:
    """Command-line entry point; returns the process exit code."""
    # argparse exits with 2 on usage errors by itself
    args, explicit_args = parse_arguments(argv)

    early_logger = logging.getLogger("sweep")
    try:
        settings = merge_settings(args, explicit_args, early_logger)
    except InvalidConfigError as e:
        setup_logging(DEFAULT_LOG_DIR, DEFAULT_LOG_PREFIX, "sweep").error(str(e))
        return EXIT_INVALID_CONFIG

    logger = setup_logging(
        settings.get("log_dir") or DEFAULT_LOG_DIR,
        settings.get("log_prefix") or DEFAULT_LOG_PREFIX,
        "sweep",
    )
    try:
        config = build_sweep_config(settings)
    except InvalidConfigError as e:
        logger.error(str(e))
        return EXIT_INVALID_CONFIG

    try:
        grid = run_sweep(config, logger)
    except CellQuadratureError as e:
        logger.error(f"{e} (alpha={e.alpha!r}, sigma={e.sigma!r})")
        return EXIT_QUADRATURE_FAILURE
    except QuadratureError as e:
        logger.error(str(e))
        return EXIT_QUADRATURE_FAILURE

    # An unwritable output location is reported like any other bad setting
    try:
        written = write_outputs(grid, config.format, config.out, config.heatmap)
    except OSError as e:
        logger.error(f"Cannot write outputs: {e}")
        return EXIT_INVALID_CONFIG
    for path in written:
        logger.info(f"Wrote {path}")
    return EXIT_OK
