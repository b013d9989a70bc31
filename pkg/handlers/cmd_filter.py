import logging

import settings.help_texts as txt
from handlers.common import add_output, load_hints, load_model, load_suite, require
from purpose import HintSet, filter_suite
from storage import emit
from testgen import serialize_suite

logger = logging.getLogger(__name__)


def handle_filter(args) -> int:
    require(bool(args.purposes) != bool(args.purpose), "filter: give either --purposes FILE or --purpose TEXT")
    hints = load_hints(args.purposes) if args.purposes else HintSet.of(*args.purpose)
    model = load_model(args.model)
    suite = load_suite(args.suite, model)
    filtered = filter_suite(suite, hints, model)
    logger.info(f"{len(filtered)} of {len(suite)} test cases kept")
    emit(serialize_suite(filtered), args.output)
    return 0


def register_filter_handlers(subparsers):
    parser = subparsers.add_parser("filter", help=txt.FILTER, description=txt.FILTER)
    parser.add_argument("suite", help=txt.SUITE)
    parser.add_argument("--model", required=True, help=txt.MODEL)
    parser.add_argument("--purposes", default=None, help=txt.PURPOSES)
    parser.add_argument("--purpose", action="append", default=[], help=txt.FILTER_PURPOSE)
    add_output(parser)
    parser.set_defaults(handler=handle_filter)
