import settings.config as cfg

PROG = "harp"

DESCRIPTION = (
    "Hint-based test case prioritization for model-based testing: generate suites from "
    "labeled transition systems, filter them with test purposes, prioritize, evaluate and "
    "run prioritization experiments."
)

EPILOG = (
    "exit codes: 0 success, 1 usage error, 2 domain or file error. "
    "Environment (logging and parallelism only): HARP_LOG_LEVEL, HARP_LOG_FILE, HARP_WORKERS."
)

VERBOSE = "log progress to stderr (-v info, -vv debug)"
OUTPUT = "output file (default: standard output); written atomically"
MODEL = "model file (`lts`/`initial`/`states`/`trans` lines)"
SUITE = "suite file (`suite`/`tc` lines)"
PURPOSES = "purpose file, one `*`/label pattern per line"
FAULTS = "fault report (`fault <id> : <tc-id>, ...` lines)"

VALIDATE = "check a model file and report its metrics"
VALIDATE_METRICS = "print branches, joins, loops and min/max test case depth"
VALIDATE_SUITE = "print statistics of a suite resolved against the model"

GENERATE = "generate the loop-bounded test suite of a model"
LOOP_BOUND = f"loop events allowed per path (default {cfg.LOOP_BOUND})"
MAX_PATHS = f"fail when more paths than this are generated (default {cfg.PATH_CAP})"
GENERATE_SEED = "accepted for uniformity; generation draws no random numbers"

FILTER = "keep the test cases matching at least one purpose"
FILTER_PURPOSE = "inline purpose text (repeatable)"

PRIORITIZE = "order a suite with a prioritization technique"
TECHNIQUE = "prioritization technique"
SEED = "seed of the random stream (required by randomized techniques)"
DEBUG = "check every selection against a brute-force recomputation"

EVALUATE = "score a prioritized order against a fault report"
METRIC = "apfd (higher is better) or fmeasure (test cases run before the first failure)"

SYNTHESIZE = "derive good or bad hints for faults of a fault report"
HINT_KIND = "good: failing share of the filtered set within --range; bad: no failing case"
HINT_RANGE = f"failing share for good hints, `lo-hi` (default {cfg.GOOD_HINT_RANGE[0]:.2f}-{cfg.GOOD_HINT_RANGE[1]:.2f})"
HINT_FAULT = "only this fault (default: every fault of the report)"

A12 = "Vargha-Delaney A12 of two samples, or the summary table of an experiment's records"
A12_SAMPLES = "two files with one number per line"
A12_RECORDS = "recompute the pairwise summary from an experiment CSV"

EXPERIMENT = "run a prioritization experiment described by a `key = value` config file"
EXPERIMENT_SEED = "base seed (overrides the config's `seed`)"
EXPERIMENT_SUMMARY = "write the pairwise A12 table (CSV) here"
EXPERIMENT_AGGREGATE = "write medians and shares across objects (JSON) here"
WORKERS = "worker processes (default from HARP_WORKERS); never changes the output"
