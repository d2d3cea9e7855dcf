from .config import Settings, settings
from .log import configure_logging

__all__ = ["Settings", "settings", "configure_logging"]
