import logging
import sys
from typing import Optional

from .config import settings

_HANDLER_NAME = "pistate-stderr"


def configure_logging(level: Optional[str] = None) -> logging.Logger:
    """
    Attach a single stderr handler to the ``pistate`` logger.

    Standard output is reserved for command results, so diagnostics always
    go to stderr. Calling this twice does not duplicate handlers.

    Args:
        level (str | None): Explicit level name. Defaults to DEBUG when
            ``settings.debug`` is on, otherwise ``settings.log_level``.

    Returns:
        logging.Logger: The configured package logger.
    """
    logger = logging.getLogger("pistate")
    if level is None:
        level = "DEBUG" if settings.debug else settings.log_level
    logger.setLevel(level.upper())

    if not any(h.get_name() == _HANDLER_NAME for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.set_name(_HANDLER_NAME)
        handler.setFormatter(
            logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s")
        )
        logger.addHandler(handler)
    return logger
