"""Console logging setup."""

import logging

from rich.console import Console
from rich.logging import RichHandler

LOGGER_NAME = "shotscore"


def configure_logging(verbosity: int = 0) -> logging.Logger:
    """Attach a rich stderr handler to the package logger.

    Args:
        verbosity: -1 for warnings only, 0 for info, 1 or more for debug.

    Returns:
        The configured package logger.
    """
    if verbosity < 0:
        level = logging.WARNING
    elif verbosity == 0:
        level = logging.INFO
    else:
        level = logging.DEBUG

    logger = logging.getLogger(LOGGER_NAME)
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)

    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        markup=False,
        rich_tracebacks=False,
    )
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger
