import argparse
import logging
import sys
from typing import Optional, Sequence

from supcomp.commands import COMMANDS
from supcomp.config import log_level
from supcomp.errors import SupCompError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supcomp",
        description="Exact sup-completion kernel for finite atomic models and its property verifier",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=log_level(), format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except SupCompError as e:
        logger.debug("command %s failed", args.command, exc_info=True)
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
