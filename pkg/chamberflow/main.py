#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

import sys
import logging
import argparse

from typing import List, Optional

from . import __version__, config, loader
from .types import CatalogError, ChamberflowError
from .validators import ValidationError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def build_parser(manager: Optional[loader.ModulesManager] = None) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chamberflow",
        description="Mean curvature flow on Weyl chamber polytopes of rank-2 Hermann actions",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="YAML file with option overrides", required=False)
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug messages")

    return (manager or loader.ModulesManager().load()).build_parser(parser)


class Main:
    def __init__(self, args) -> None:
        self.args = args

    def main(self) -> int:
        """Runs the selected command and maps its outcome to an exit code"""
        try:
            if getattr(self.args, "config", None):
                config.load_settings(self.args.config)

            code = self.args.handler(self.args)
        except (CatalogError, ValidationError) as error:
            print(f"error: {error}", file=sys.stderr)
            return EXIT_USAGE
        except ChamberflowError as error:
            logger.debug("Command failed", exc_info=True)
            print(f"error: {error}", file=sys.stderr)
            return EXIT_NUMERIC
        except OSError as error:
            print(f"error: {error}", file=sys.stderr)
            return EXIT_USAGE

        return EXIT_OK if code is None else int(code)


def run(argv: Optional[List[str]] = None) -> int:
    """Parses ``argv`` and runs it; returns the exit code instead of exiting"""
    parser = build_parser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return EXIT_OK if error.code in (0, None) else EXIT_USAGE

    return Main(args).main()
