from . import config
from . import core
from . import states
from . import fp1
from . import modal

__version__ = "0.1.0"
