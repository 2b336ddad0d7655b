import argparse
import logging
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from app import __version__
from app.cli.routes import experiments, geometry, wendel
from app.core.config import settings
from app.core.errors import EXIT_CONFIG, EXIT_INTERNAL, OriginLabError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="originlab",
        description="Exact origin-in-hull and LP-boundedness checks with Wendel-law experiments.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    wendel.register(subparsers)
    geometry.register(subparsers)
    experiments.register(subparsers)
    return parser


def dispatch(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, run the sub-command and map failures to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help / --version exit 0, usage errors exit 2
        return e.code if isinstance(e.code, int) else EXIT_CONFIG
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.LOG_LEVEL,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        code: int = args.handler(args)
        return code
    except OriginLabError as e:
        if e.exit_code >= EXIT_INTERNAL:
            logger.exception(e.detail)
        else:
            logger.error(e.detail)
        return e.exit_code
    except ValidationError as e:
        logger.error(f"invalid input: {e}")
        return EXIT_CONFIG
    except Exception:
        logger.exception(f"internal error in {args.command}")
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
