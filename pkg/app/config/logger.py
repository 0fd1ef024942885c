import logging
import sys

from app.config.settings import settings

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _build_logger(name: str) -> logging.Logger:
    """
    Project logger writing to stderr; stdout carries certificates and polytope files.
    """
    instance = logging.getLogger(name)
    instance.setLevel(logging.DEBUG if settings.DEBUG else logging.INFO)
    instance.propagate = False

    # Clear existing handlers to avoid duplicates
    if instance.hasHandlers():
        instance.handlers.clear()

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    instance.addHandler(handler)
    return instance


def set_level(level: int) -> None:
    """Change the verbosity of the project logger and its handlers."""
    logger.setLevel(level)
    for handler in logger.handlers:
        handler.setLevel(level)


logger = _build_logger(settings.SERVICE_NAME)
