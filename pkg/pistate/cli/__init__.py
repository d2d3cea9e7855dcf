from .app import build_parser, main, run
from .command import Command, command

__all__ = ["Command", "command", "build_parser", "run", "main"]
