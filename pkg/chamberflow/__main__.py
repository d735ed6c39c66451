import sys

if sys.version_info < (3, 8, 0):
    print("Needs Python 3.8 or higher")
    sys.exit(1)

import logging

from .main import Main, build_parser
from .logger import init_logging

from contextlib import suppress

parser = build_parser()

if __name__ == "__main__":
    args = parser.parse_args()
    init_logging(logging.DEBUG if args.verbose else logging.WARNING)

    with suppress(KeyboardInterrupt):
        sys.exit(Main(args).main())
