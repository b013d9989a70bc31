import logging

import settings.config as cfg
import settings.help_texts as txt
from evaluation import evaluate, parse_fault_report
from handlers.common import add_output
from prioritizers import parse_order
from storage import emit, read_text
from utils import format_value

logger = logging.getLogger(__name__)


def handle_evaluate(args) -> int:
    order = parse_order(read_text(args.order))
    faults = parse_fault_report(read_text(args.faults))
    unknown = faults.unknown_ids(order.order)
    if unknown:
        logger.warning(f"Fault report names test cases missing from the order: {', '.join(unknown)}")
    result = evaluate(args.metric, order, faults)
    emit(f"{result.name} {format_value(result.value)}\n", args.output)
    return 0


def register_evaluate_handlers(subparsers):
    parser = subparsers.add_parser("evaluate", help=txt.EVALUATE, description=txt.EVALUATE)
    parser.add_argument("order", help="order file (`order <technique> seed=<n>` then one id per line)")
    parser.add_argument("--faults", required=True, help=txt.FAULTS)
    parser.add_argument("--metric", required=True, choices=cfg.METRICS, help=txt.METRIC)
    add_output(parser)
    parser.set_defaults(handler=handle_evaluate)
