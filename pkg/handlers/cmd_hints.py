import logging

import settings.help_texts as txt
from errors import UsageError
from evaluation import parse_fault_report
from handlers.common import add_output, load_model, load_suite, require
from hints import HintQualityTarget, synthesize_hint
from purpose import HintSet, serialize_hints
from storage import emit, read_text

logger = logging.getLogger(__name__)


def _target(kind: str, bounds: str | None) -> HintQualityTarget:
    if kind == "bad":
        require(bounds is None, "synthesize-hints: --range applies to good hints only")
        return HintQualityTarget.bad()
    if bounds is None:
        return HintQualityTarget.good()
    lo, sep, hi = bounds.partition("-")
    try:
        if not sep:
            raise ValueError(bounds)
        return HintQualityTarget.good(float(lo), float(hi))
    except ValueError:
        raise UsageError(f"synthesize-hints: --range expects `lo-hi` within [0, 1], got `{bounds}`") from None


def handle_synthesize(args) -> int:
    target = _target(args.kind, args.range)
    model = load_model(args.model)
    suite = load_suite(args.suite, model)
    faults = parse_fault_report(read_text(args.faults))
    fault_ids = [args.fault] if args.fault else list(faults.faults)
    found = [synthesize_hint(suite, faults, fault_id, model, target) for fault_id in fault_ids]
    hints = HintSet(tuple(h.purpose for h in found), tuple(h.provenance for h in found))
    emit(serialize_hints(hints), args.output)
    return 0


def register_hints_handlers(subparsers):
    parser = subparsers.add_parser("synthesize-hints", help=txt.SYNTHESIZE, description=txt.SYNTHESIZE)
    parser.add_argument("suite", help=txt.SUITE)
    parser.add_argument("--model", required=True, help=txt.MODEL)
    parser.add_argument("--faults", required=True, help=txt.FAULTS)
    parser.add_argument("--kind", required=True, choices=("good", "bad"), help=txt.HINT_KIND)
    parser.add_argument("--range", default=None, help=txt.HINT_RANGE)
    parser.add_argument("--fault", default=None, help=txt.HINT_FAULT)
    add_output(parser)
    parser.set_defaults(handler=handle_synthesize)
