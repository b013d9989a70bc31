import logging

import settings.config as cfg
import settings.help_texts as txt
from errors import ModelFormatError
from handlers.common import add_output, load_model, load_suite
from lts import model_metrics, validate
from storage import emit
from testgen import generate, serialize_suite, suite_stats

logger = logging.getLogger(__name__)


def _depth(value: int | None) -> str:
    return "-" if value is None else str(value)


def handle_validate(args) -> int:
    model = load_model(args.model)
    violations = validate(model)
    if violations:
        raise ModelFormatError(f"{len(violations)} violation(s): " + "; ".join(violations))
    lines = [f"ok {model.name}: {len(model.states)} states, {len(model.transitions)} transitions"]
    if args.metrics:
        metrics = model_metrics(model)
        lines += [
            f"branches {metrics.branches}",
            f"joins {metrics.joins}",
            f"loops {metrics.loops}",
            f"min_depth {_depth(metrics.min_depth)}",
            f"max_depth {_depth(metrics.max_depth)}",
        ]
        lines += [f"warning {w}" for w in metrics.warnings]
    if args.suite:
        stats = suite_stats(load_suite(args.suite, model))
        lines += [f"cases {stats.count}", f"shortest {_depth(stats.shortest)}", f"longest {_depth(stats.longest)}"]
        lines += [f"kind {kind} {count}" for kind, count in stats.kinds.items()]
    emit("\n".join(lines) + "\n", args.output)
    return 0


def handle_generate(args) -> int:
    if args.seed is not None:
        logger.debug(f"--seed {args.seed} ignored: generation is deterministic")
    model = load_model(args.model)
    suite = generate(model, loop_bound=args.loop_bound, path_cap=args.max_paths)
    emit(serialize_suite(suite), args.output)
    return 0


def register_model_handlers(subparsers):
    validate_parser = subparsers.add_parser("validate", help=txt.VALIDATE, description=txt.VALIDATE)
    validate_parser.add_argument("model", help=txt.MODEL)
    validate_parser.add_argument("--metrics", action="store_true", help=txt.VALIDATE_METRICS)
    validate_parser.add_argument("--suite", default=None, help=txt.VALIDATE_SUITE)
    add_output(validate_parser)
    validate_parser.set_defaults(handler=handle_validate)

    generate_parser = subparsers.add_parser("generate", help=txt.GENERATE, description=txt.GENERATE)
    generate_parser.add_argument("model", help=txt.MODEL)
    generate_parser.add_argument("--loop-bound", type=int, default=cfg.LOOP_BOUND, help=txt.LOOP_BOUND)
    generate_parser.add_argument("--max-paths", type=int, default=cfg.PATH_CAP, help=txt.MAX_PATHS)
    generate_parser.add_argument("--seed", type=int, default=None, help=txt.GENERATE_SEED)
    add_output(generate_parser)
    generate_parser.set_defaults(handler=handle_generate)
