#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

import os
import inspect
import logging
import argparse
import importlib

from types import FunctionType
from typing import Any, Callable, Dict, List, Tuple, Union

from . import translation, utils

logger = logging.getLogger(__name__)

Argument = Tuple[Tuple[str, ...], Dict[str, Any]]


def module(
    name: str,
    author: Union[str, None] = None,
    version: Union[int, float, None] = None,
) -> FunctionType:
    def decorator(instance: "Module"):
        instance.name = name
        instance.author = author
        instance.version = version

        return instance

    return decorator


@module(name="Unknown")
class Module:
    name: str
    author: str
    version: Union[int, float]

    strings: Dict[str, str] = {}

    def __init__(self):
        self.strings = translation.Strings(self)

    def out(self, key: str, **values) -> str:
        text = self.strings(key).format(**values)
        print(text)
        return text


def arg(*flags: str, **kwargs) -> Argument:
    """One ``add_argument`` call, kept for later"""
    return flags, kwargs


def command(docs: str = None, *arguments: Argument) -> FunctionType:
    def decorator(func: FunctionType):
        if docs:
            func.__doc__ = docs

        setattr(func, "is_command", True)
        setattr(func, "arguments", list(arguments))
        return func

    return decorator


def get_command_handlers(instance: Module) -> Dict[str, Callable]:
    """Get command handlers from a module instance."""
    command_handlers = {}

    for method_name in dir(instance):
        method = getattr(instance, method_name)

        if callable(method) and method_name.endswith("_cmd"):
            command_handlers[method_name[:-4].lower()] = method

    return command_handlers


class ModulesManager:
    """Finds command modules and builds the argument parser from them"""

    def __init__(self, path: str = None):
        self.modules: List[Module] = []
        self.command_handlers: Dict[str, Callable] = {}
        self._local_modules_path = path or str(utils.BASE_PATH / "modules")

    def load(self) -> "ModulesManager":
        for local_module in sorted(
            filter(
                lambda file_name: file_name.endswith(".py")
                and not file_name.startswith("_"),
                os.listdir(self._local_modules_path),
            )
        ):
            self.register_instance(f"chamberflow.modules.{local_module[:-3]}")

        return self

    def register_instance(self, module_name: str) -> List[Module]:
        imported = importlib.import_module(module_name)

        found = []
        for value in vars(imported).values():
            if inspect.isclass(value) and issubclass(value, Module) and value is not Module:
                instance = value()
                instance.command_handlers = get_command_handlers(instance)

                self.modules.append(instance)
                self.command_handlers.update(instance.command_handlers)
                found.append(instance)

        if not found:
            logger.warning(f"Could not find module class ({module_name})")

        return found

    def build_parser(self, parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
        subparsers = parser.add_subparsers(dest="command", metavar="command")
        subparsers.required = True

        for name, handler in sorted(self.command_handlers.items()):
            doc = inspect.getdoc(handler) or ""
            sub = subparsers.add_parser(name, help=doc.splitlines()[0] if doc else None, description=doc)
            for flags, kwargs in getattr(handler, "arguments", []):
                sub.add_argument(*flags, **kwargs)

            sub.set_defaults(handler=handler)

        return parser
