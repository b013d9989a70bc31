import logging

import settings.config as cfg
import settings.help_texts as txt
from handlers.common import add_output, load_hints, load_model, load_suite, require
from prioritizers import prioritize, serialize_order
from randomness import RandomSource
from storage import emit

logger = logging.getLogger(__name__)


def handle_prioritize(args) -> int:
    technique = args.technique
    hinted = technique in cfg.HINTED_TECHNIQUES
    require(not hinted or args.purposes, f"prioritize: technique {technique} requires --purposes")
    require(not hinted or args.model, f"prioritize: technique {technique} requires --model")
    require(technique not in cfg.RANDOMIZED_TECHNIQUES or args.seed is not None,
            f"prioritize: technique {technique} is randomized and requires --seed")
    if not hinted and args.purposes:
        logger.warning(f"--purposes ignored: technique {technique} takes no hints")

    model = load_model(args.model) if args.model else None
    suite = load_suite(args.suite, model)
    hints = load_hints(args.purposes) if hinted else None
    rng = RandomSource(args.seed) if args.seed is not None else None
    order = prioritize(technique, suite, model, rng, hints, debug=args.debug)
    emit(serialize_order(order), args.output)
    return 0


def register_prioritize_handlers(subparsers):
    parser = subparsers.add_parser("prioritize", help=txt.PRIORITIZE, description=txt.PRIORITIZE)
    parser.add_argument("suite", help=txt.SUITE)
    parser.add_argument("--model", default=None, help=txt.MODEL)
    parser.add_argument("--technique", required=True, choices=cfg.TECHNIQUES, help=txt.TECHNIQUE)
    parser.add_argument("--purposes", default=None, help=txt.PURPOSES)
    parser.add_argument("--seed", type=int, default=None, help=txt.SEED)
    parser.add_argument("--debug", action="store_true", help=txt.DEBUG)
    add_output(parser)
    parser.set_defaults(handler=handle_prioritize)
