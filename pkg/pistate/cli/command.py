import argparse
import inspect
from typing import Any, Callable, Optional, Union, get_args, get_origin


class Command:
    """
    A library call exposed as a subcommand.

    The argument parser is derived from the wrapped function's signature:
    parameters without a default become positionals, the others become
    ``--flags`` (underscores turn into dashes). Booleans become switches and
    ``list[T]`` parameters take any number of values.

    Attributes:
        name (str): subcommand name.
        description (str): first paragraph of the docstring.
        func (callable): the wrapped function.
        signature (inspect.Signature): cached signature.
    """

    PYTHON_TO_ARGPARSE = {
        str: str,
        int: int,
        float: float,
    }

    def __init__(self, name: str, description: str, func: Callable):
        self.name = name
        self.description = description
        self.func = func
        self.signature = inspect.signature(func)

    def __call__(self, *args, **kwargs):
        return self.func(*args, **kwargs)

    def __repr__(self):
        return f"<Command {self.name}>"

    # ------------------------------------------------------------------
    # argparse
    # ------------------------------------------------------------------
    def add_to(self, subparsers, parents=()) -> argparse.ArgumentParser:
        parser = subparsers.add_parser(self.name, help=self.description, description=self.description, parents=list(parents))
        for name, param in self.signature.parameters.items():
            required = param.default is inspect.Parameter.empty
            default = None if required else param.default
            kwargs = self._annotation_to_argparse(param.annotation, default)
            if required:
                kwargs.pop("default", None)
                parser.add_argument(name, **kwargs)
            else:
                parser.add_argument("--" + name.replace("_", "-"), dest=name, **kwargs)
        parser.set_defaults(command=self)
        return parser

    def invoke(self, namespace: argparse.Namespace) -> Any:
        kwargs = {name: getattr(namespace, name) for name in self.signature.parameters}
        return self.func(**kwargs)

    def _annotation_to_argparse(self, annotation: Any, default: Any) -> dict:
        origin = get_origin(annotation)
        args = get_args(annotation)

        # Optional[T] behaves like T with a None default
        if origin is Union and type(None) in args:
            non_none = [a for a in args if a is not type(None)]
            if len(non_none) == 1:
                return self._annotation_to_argparse(non_none[0], default)

        if origin is list:
            item = args[0] if args else str
            return {
                "nargs": "*",
                "type": self.PYTHON_TO_ARGPARSE.get(item, str),
                "default": list(default) if default is not None else [],
            }

        if annotation is bool:
            return {"action": "store_true", "default": bool(default)}

        return {"type": self.PYTHON_TO_ARGPARSE.get(annotation, str), "default": default}


# ----------------------------------------------------------------------
# Decorator and registry
# ----------------------------------------------------------------------
REGISTRY: dict[str, Command] = {}


def command(func: Optional[Callable] = None, *, name: Optional[str] = None):
    """
    Register a function as a subcommand.

    Usable bare (``@command``) or with an explicit name
    (``@command(name="state-eval")``). Without one, the function name is used
    with underscores turned into dashes.
    """

    def wrap(f: Callable) -> Command:
        cmd_name = name or f.__name__.replace("_", "-")
        doc = inspect.getdoc(f) or ""
        description = doc.split("\n\n")[0].replace("\n", " ")
        cmd = Command(name=cmd_name, description=description, func=f)
        REGISTRY[cmd_name] = cmd
        return cmd

    if func is not None:
        return wrap(func)
    return wrap
