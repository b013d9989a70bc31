import argparse
import logging
import sys

import settings.config as cfg
import settings.help_texts as txt
from errors import UsageError
from handlers.cmd_evaluate import register_evaluate_handlers
from handlers.cmd_experiment import register_experiment_handlers
from handlers.cmd_filter import register_filter_handlers
from handlers.cmd_hints import register_hints_handlers
from handlers.cmd_model import register_model_handlers
from handlers.cmd_prioritize import register_prioritize_handlers

logger = logging.getLogger(__name__)


class CliParser(argparse.ArgumentParser):
    """Raises UsageError instead of exiting, so main() owns the exit code."""

    def error(self, message):
        raise UsageError(f"{self.format_usage().rstrip()}\n{self.prog}: error: {message}")


def setup_logging(verbosity: int = 0):
    level = cfg.LOG_LEVEL if verbosity == 0 else ("INFO" if verbosity == 1 else "DEBUG")
    handlers = [logging.StreamHandler(sys.stderr)]
    if cfg.LOG_FILE:
        handlers.append(logging.FileHandler(cfg.LOG_FILE, encoding="utf-8"))
    logging.basicConfig(level=level, format=cfg.LOG_FORMAT, handlers=handlers, force=True)


def build_parser() -> CliParser:
    parser = CliParser(prog=txt.PROG, description=txt.DESCRIPTION, epilog=txt.EPILOG)
    parser.add_argument("-v", "--verbose", action="count", default=0, help=txt.VERBOSE)
    subparsers = parser.add_subparsers(dest="command", metavar="command", parser_class=CliParser)
    subparsers.required = True
    register_model_handlers(subparsers)
    register_filter_handlers(subparsers)
    register_prioritize_handlers(subparsers)
    register_evaluate_handlers(subparsers)
    register_hints_handlers(subparsers)
    register_experiment_handlers(subparsers)
    return parser


def _one_line(error: BaseException) -> str:
    return " ".join(str(error).split("\n"))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"{e}\n")
        return 1
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    setup_logging(args.verbose)
    try:
        return args.handler(args) or 0
    except UsageError as e:
        sys.stderr.write(f"{txt.PROG}: error: {e}\n")
        return 1
    except (ValueError, OSError) as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        sys.stderr.write(f"{txt.PROG}: error: {_one_line(e)}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
