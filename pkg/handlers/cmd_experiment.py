import logging
from pathlib import Path

import settings.config as cfg
import settings.help_texts as txt
from errors import FormatError
from evaluation import a12
from handlers.common import add_output, require
from harness import parse_config, parse_records, run_experiment, serialize_records, serialize_summary, summarize
from storage import emit, read_text, save_json
from utils import content_lines, format_value

logger = logging.getLogger(__name__)


def _sample(path: str) -> list[float]:
    values = []
    for number, line in content_lines(read_text(path)):
        try:
            values.append(float(line.strip()))
        except ValueError:
            raise FormatError(f"{path}: expected one number per line, got `{line.strip()}`", number, 1) from None
    return values


def handle_a12(args) -> int:
    require(bool(args.records) != bool(args.samples), "a12: give either two sample files or --records FILE")
    if args.records:
        emit(serialize_summary(summarize(parse_records(read_text(args.records)))), args.output)
        return 0
    require(len(args.samples) == 2, f"a12: expected two sample files, got {len(args.samples)}")
    result = a12(_sample(args.samples[0]), _sample(args.samples[1]))
    emit(f"{format_value(result.statistic)} {result.label}\n", args.output)
    return 0


def handle_experiment(args) -> int:
    config = parse_config(read_text(args.config), base_dir=Path(args.config).parent)
    require(args.seed is not None or config.seed is not None,
            "experiment: give --seed or a `seed` line in the config")
    require(args.workers >= 1, "experiment: --workers must be >= 1")
    result = run_experiment(config, seed=args.seed, workers=args.workers)
    emit(serialize_records(result.records), args.output)
    if args.summary:
        emit(serialize_summary(result.summary), args.summary)
    if args.aggregate:
        save_json(args.aggregate, [row.as_dict() for row in result.aggregate])
    return 0


def register_experiment_handlers(subparsers):
    a12_parser = subparsers.add_parser("a12", help=txt.A12, description=txt.A12)
    a12_parser.add_argument("samples", nargs="*", help=txt.A12_SAMPLES)
    a12_parser.add_argument("--records", default=None, help=txt.A12_RECORDS)
    add_output(a12_parser)
    a12_parser.set_defaults(handler=handle_a12)

    experiment_parser = subparsers.add_parser("experiment", help=txt.EXPERIMENT, description=txt.EXPERIMENT)
    experiment_parser.add_argument("config", help="experiment config file")
    experiment_parser.add_argument("--seed", type=int, default=None, help=txt.EXPERIMENT_SEED)
    experiment_parser.add_argument("--summary", default=None, help=txt.EXPERIMENT_SUMMARY)
    experiment_parser.add_argument("--aggregate", default=None, help=txt.EXPERIMENT_AGGREGATE)
    experiment_parser.add_argument("--workers", type=int, default=cfg.WORKERS, help=txt.WORKERS)
    add_output(experiment_parser)
    experiment_parser.set_defaults(handler=handle_experiment)
