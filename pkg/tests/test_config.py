import logging

import pytest

from pistate.config import Settings, configure_logging


@pytest.fixture
def package_logger():
    """
    The package logger, restored after the test.
    """
    logger = logging.getLogger("pistate")
    handlers, level = list(logger.handlers), logger.level
    yield logger
    logger.handlers[:] = handlers
    logger.setLevel(level)


def test_environment_overrides_defaults(monkeypatch):
    """
    PISTATE_-prefixed variables override the defaults.
    """
    monkeypatch.setenv("PISTATE_FM_MAX_VARS", "7")
    monkeypatch.setenv("PISTATE_SEARCH_DELTA", "1/50")
    s = Settings(_env_file=None)
    assert s.fm_max_vars == 7
    assert s.search_delta == "1/50"
    assert s.sampler_samples == 100_000


def test_logging_is_configured_once(package_logger):
    """
    Repeated configuration keeps a single stderr handler.
    """
    configure_logging("info")
    configure_logging("debug")
    names = [h.get_name() for h in package_logger.handlers]
    assert names.count("pistate-stderr") == 1
    assert package_logger.level == logging.DEBUG
