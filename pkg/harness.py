"""Synthetic models, fault planting and the repeated-trial experiment runner.

An experiment object is a (model, fault) pair, reported as ``<model>/<fault>``.
Each technique runs ``repetitions`` trials per object and hint kind; techniques
that take no hints run once with hint ``none``. A trial seeds its own stream
from (base seed, object, technique, hint, trial), so records do not depend on
scheduling, and they are sorted before they are written.
"""
import io
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import networkx as nx
import pandas as pd

import settings.config as cfg
from errors import (
    DomainError,
    EmptySuiteError,
    FaultPlantingError,
    FormatError,
    HintSearchError,
    InfeasibleParametersError,
    PathLimitError,
    TrialError,
)
from evaluation import FaultReport, a12_exact, effect_label, evaluate
from hints import HintQualityTarget, synthesize_hint
from lts import LtsModel, Transition, parse_model, structure_counts
from prioritizers import prioritize
from purpose import HintSet, LabelIndex, literal_purpose
from randomness import RandomSource, derive_seed
from storage import read_text
from testgen import TestSuite, generate
from utils import content_lines, format_value, split_list

logger = logging.getLogger(__name__)

SYNTHETIC_PREFIX = "synthetic:"
NO_HINT = "none"


# --- synthetic models ---------------------------------------------------------

@dataclass(frozen=True)
class LtsParams:
    states: int
    branches: int = 0
    joins: int = 0
    loops: int = 0

    def check(self):
        for name, value, (lo, hi) in (
            ("states", self.states, cfg.SYNTHETIC_STATES),
            ("branches", self.branches, cfg.SYNTHETIC_BRANCHES),
            ("loops", self.loops, cfg.SYNTHETIC_LOOPS),
        ):
            if not lo <= value <= hi:
                raise InfeasibleParametersError(f"{name} must lie in {lo}..{hi}, got {value}")
        if self.joins < 0:
            raise InfeasibleParametersError(f"joins must be >= 0, got {self.joins}")
        if self.states < 2 * self.branches + 1:
            raise InfeasibleParametersError(
                f"{self.branches} branches need at least {2 * self.branches + 1} states, got {self.states}"
            )
        if max(self.loops, self.joins) > self.branches:
            raise InfeasibleParametersError(
                f"loops ({self.loops}) and joins ({self.joins}) may not exceed branches ({self.branches}): "
                f"each one takes a leaf and one leaf must stay a sink"
            )
        if self.joins == 0 and self.loops > 1:
            raise InfeasibleParametersError("without joins at most one loop can close, onto the initial state")


def _tree(params: LtsParams, rng: RandomSource) -> tuple[list[int], list[int | None]]:
    """Random rooted tree in preorder: out-degrees and parents, node 0 the root."""
    n, b = params.states, params.branches
    pool = [2] * b + [1] * (n - 2 * b - 1) + [0] * (b + 1)
    degrees = [pool[i] for i in rng.permutation(n)]
    # cycle lemma: rotating past the first minimum prefix sum gives the one valid preorder sequence
    total, low, start = 0, 0, 0
    for k, degree in enumerate(degrees):
        total += degree - 1
        if total < low:
            low, start = total, k + 1
    degrees = degrees[start:] + degrees[:start]

    parents: list[int | None] = [None] * n
    open_slots: list[list[int]] = []
    for node, degree in enumerate(degrees):
        if open_slots:
            top = open_slots[-1]
            parents[node] = top[0]
            top[1] -= 1
            if top[1] == 0:
                open_slots.pop()
        if degree:
            open_slots.append([node, degree])
    return degrees, parents


def _strict_dominators(idom: dict[int, int], node: int) -> list[int]:
    chain = []
    current = idom.get(node)
    while current is not None and current != node:
        chain.append(current)
        if current == 0:
            break
        node, current = current, idom.get(current)
    return chain


def _extra_edges(degrees: list[int], parents: list[int | None], params: LtsParams, rng: RandomSource):
    """Forward join edges and loop edges, all leaving distinct leaves. None when this tree cannot host them."""
    n = len(degrees)
    indegree = [0] + [1] * (n - 1)
    joins: set[int] = set()
    leaves = [v for v in range(n) if degrees[v] == 0 and v != 0]
    leaves = [leaves[i] for i in rng.permutation(len(leaves))]

    def attach(target: int):
        indegree[target] += 1
        if indegree[target] == 2:
            joins.add(target)

    forwards: list[tuple[int, int]] = []
    spare: list[int] = []
    wanted = max(0, params.joins - params.loops)
    for leaf in leaves:
        if len(forwards) == wanted:
            spare.append(leaf)
            continue
        options = [v for v in range(leaf + 1, n) if indegree[v] == 1]
        if not options:
            spare.append(leaf)
            continue
        target = options[rng.index(len(options))]
        forwards.append((leaf, target))
        attach(target)
    if len(spare) < params.loops:
        return None

    dag = nx.DiGraph()
    dag.add_nodes_from(range(n))
    dag.add_edges_from((p, v) for v, p in enumerate(parents) if p is not None)
    dag.add_edges_from(forwards)
    idom = nx.immediate_dominators(dag, 0)

    loops: list[tuple[int, int]] = []
    for k, leaf in enumerate(spare[:params.loops]):
        need = params.joins - len(joins)
        left = params.loops - k
        chain = _strict_dominators(idom, leaf)
        fresh = [d for d in chain if indegree[d] == 1]
        neutral = [d for d in chain if indegree[d] != 1]
        if need >= left:
            options = fresh
        elif need == 0:
            options = neutral
        else:
            options = fresh or neutral
        if not options:
            return None
        target = options[rng.index(len(options))]
        loops.append((leaf, target))
        attach(target)
    return forwards, loops


def _labelled(degrees: list[int], parents: list[int | None], forwards, loops) -> list[Transition]:
    depth = [0] * len(degrees)
    for v, p in enumerate(parents):
        if p is not None:
            depth[v] = depth[p] + 1
    edges = []
    for v, p in enumerate(parents):
        if p is None:
            continue
        if degrees[p] > 1:
            label = f"C - condition s{p + 1}-s{v + 1}"
        elif depth[p] % 2 == 0:
            label = f"S - step s{p + 1}-s{v + 1}"
        else:
            label = f"R - response s{p + 1}-s{v + 1}"
        edges.append(((p, v), label))
    edges.extend(((a, b), f"S - continue s{a + 1}-s{b + 1}") for a, b in forwards)
    edges.extend(((a, b), f"R - back to s{b + 1} from s{a + 1}") for a, b in loops)
    edges.sort()
    return [Transition(f"s{a + 1}", f"s{b + 1}", label) for (a, b), label in edges]


def gen_random_lts(params: LtsParams, rng: RandomSource, name: str = "syn") -> LtsModel:
    """Random connected model with the requested branch, join and loop counts.

    Built as a random tree (every state reachable, at least one sink) plus
    join edges forward in preorder and loop edges back to a dominator, so each
    loop edge is a back edge of any depth-first search. Each attempt is
    checked against the structural counts; if none is exact within
    GENERATOR_ATTEMPTS, the closest model is returned and the shortfall logged.
    """
    params.check()
    wanted = (params.branches, params.joins, params.loops)
    best, best_gap, best_counts = None, None, None
    for attempt in range(1, cfg.GENERATOR_ATTEMPTS + 1):
        degrees, parents = _tree(params, rng)
        extra = _extra_edges(degrees, parents, params, rng)
        if extra is None:
            continue
        transitions = _labelled(degrees, parents, *extra)
        model = LtsModel(
            name=name,
            states=tuple(f"s{k + 1}" for k in range(params.states)),
            initial="s1",
            transitions=tuple(transitions),
        )
        counts = structure_counts(model)
        gap = sum(abs(got - asked) for got, asked in zip(counts, wanted))
        if gap == 0:
            logger.debug(f"Generated {name} with {params} in {attempt} attempt(s)")
            return model
        if best_gap is None or gap < best_gap:
            best, best_gap, best_counts = model, gap, counts
    if best is None:
        raise InfeasibleParametersError(f"no model could be built for {params} in {cfg.GENERATOR_ATTEMPTS} attempts")
    logger.warning(
        f"Generator shortfall for {name}: asked branches/joins/loops {wanted}, built {best_counts}"
    )
    return best


# --- fault planting -----------------------------------------------------------

def revealing_bounds_ok(revealing: int, suite_size: int, max_share: float = cfg.MAX_REVEALING_SHARE) -> bool:
    """A planted fault is revealed by at least one case and at most ``max_share`` of the suite."""
    return 1 <= revealing <= Fraction(str(max_share)) * suite_size


def plant_faults(
    model: LtsModel,
    suite: TestSuite,
    count: int,
    rng: RandomSource,
    max_share: float = cfg.MAX_REVEALING_SHARE,
) -> FaultReport:
    """Faults defined by `* | L1 | * [| L2 | *]` purposes drawn from the suite's own label sequences.

    A test case fails for a fault iff it matches the fault's purpose; the
    purpose text is kept as the fault's cause. ``max_share`` may only
    tighten the default bound of half the suite.
    """
    if not suite.cases:
        raise EmptySuiteError(f"cannot plant faults in the empty suite of {model.name}")
    if count < 1:
        raise ValueError("fault count must be >= 1")
    if not 0 < max_share <= cfg.MAX_REVEALING_SHARE:
        raise ValueError(f"revealing share must lie in (0, {cfg.MAX_REVEALING_SHARE}], got {max_share}")
    if len(suite) < 2:
        raise FaultPlantingError("a suite of one test case cannot hold a fault revealed by at most half of it")
    index = LabelIndex(suite.cases)
    faults: dict[str, frozenset[str]] = {}
    causes: dict[str, str] = {}
    for _ in range(cfg.PLANTING_ATTEMPTS):
        if len(faults) == count:
            break
        tc = suite.cases[rng.index(len(suite))]
        width = min(len(tc), 1 + rng.index(2))
        picks = sorted(rng.permutation(len(tc))[:width])
        labels = tuple(tc.labels[k] for k in picks)
        revealing = frozenset(c.id for c in index.matching(labels))
        if not revealing_bounds_ok(len(revealing), len(suite), max_share) or revealing in faults.values():
            continue
        fault_id = f"F{len(faults) + 1}"
        faults[fault_id] = revealing
        causes[fault_id] = literal_purpose(*labels).text
        logger.debug(f"Planted {fault_id} in {model.name}: `{causes[fault_id]}` reveals {len(revealing)} case(s)")
    if len(faults) < count:
        raise FaultPlantingError(
            f"planted {len(faults)} of {count} faults in {model.name} after {cfg.PLANTING_ATTEMPTS} draws; "
            f"no further purpose reveals between 1 and {int(Fraction(str(max_share)) * len(suite))} test cases"
        )
    return FaultReport(faults, causes)


# --- experiment configuration -------------------------------------------------

@dataclass(frozen=True)
class SyntheticRanges:
    states: tuple[int, int] = cfg.DESK_STATES
    branches: tuple[int, int] = cfg.DESK_BRANCHES
    joins: tuple[int, int] = cfg.DESK_JOINS
    loops: tuple[int, int] = cfg.DESK_LOOPS


@dataclass(frozen=True)
class ExperimentConfig:
    techniques: tuple[str, ...] = cfg.TECHNIQUES
    repetitions: int = cfg.REPETITIONS
    seed: int | None = None
    models: tuple[str, ...] = (f"{SYNTHETIC_PREFIX}{cfg.DESK_MODELS}",)
    ranges: SyntheticRanges = field(default_factory=SyntheticRanges)
    max_cases: int = cfg.DESK_MAX_CASES
    min_cases: int = cfg.DESK_MIN_CASES  # synthetic models only
    faults: int = cfg.DESK_FAULTS
    max_revealing: float = cfg.MAX_REVEALING_SHARE
    hints: tuple[HintQualityTarget, ...] = (HintQualityTarget.good(), HintQualityTarget.bad())
    metrics: tuple[str, ...] = cfg.METRICS
    base_dir: Path = Path(".")

    def __post_init__(self):
        if self.repetitions < 1:
            raise FormatError(f"repetitions must be >= 1, got {self.repetitions}")
        if not self.techniques:
            raise FormatError("at least one technique is required")
        if not self.metrics:
            raise FormatError("at least one metric is required")
        if not self.models:
            raise FormatError("at least one model is required")
        if self.faults < 1:
            raise FormatError(f"faults must be >= 1, got {self.faults}")
        if not 2 <= self.min_cases <= self.max_cases:
            raise FormatError(f"expected 2 <= min_cases <= max_cases, got {self.min_cases} and {self.max_cases}")
        if not 0 < self.max_revealing <= cfg.MAX_REVEALING_SHARE:
            raise FormatError(f"max_revealing must lie in (0, {cfg.MAX_REVEALING_SHARE}], got {self.max_revealing}")
        kinds = [target.kind for target in self.hints]
        if len(set(kinds)) != len(kinds):
            raise FormatError("each hint kind may be listed once")
        if self.hinted and not self.hints:
            raise FormatError("hinted techniques need at least one hint target")

    @property
    def hinted(self) -> bool:
        return any(t in cfg.HINTED_TECHNIQUES for t in self.techniques)

    def hint_kinds(self, technique: str) -> list[str]:
        if technique in cfg.HINTED_TECHNIQUES:
            return [target.kind for target in self.hints]
        return [NO_HINT]


def _names(value: str, allowed: tuple[str, ...], what: str) -> tuple[str, ...]:
    names = split_list(value)
    for name in names:
        if name not in allowed:
            raise ValueError(f"unknown {what} `{name}` (expected one of {', '.join(allowed)})")
    if len(set(names)) != len(names):
        raise ValueError(f"a {what} is listed twice")
    return tuple(names)


def _range(value: str) -> tuple[int, int]:
    lo, sep, hi = value.partition("-")
    lo, hi = int(lo), int(hi) if sep else int(lo)
    if lo > hi:
        raise ValueError(f"empty range `{value}`")
    return lo, hi


def _models(value: str) -> tuple[str, ...]:
    entries = split_list(value)
    for entry in entries:
        if entry.startswith(SYNTHETIC_PREFIX) and int(entry[len(SYNTHETIC_PREFIX):]) < 1:
            raise ValueError(f"`{entry}` asks for no model")
    return tuple(entries)


def _hint_target(value: str) -> HintQualityTarget:
    kind, sep, bounds = value.partition(":")
    if kind == "bad" and not sep:
        return HintQualityTarget.bad()
    if kind == "good":
        if not sep:
            return HintQualityTarget.good()
        lo, dash, hi = bounds.partition("-")
        if not dash:
            raise ValueError(f"expected `good:<lo>-<hi>`, got `{value}`")
        return HintQualityTarget.good(float(lo), float(hi))
    raise ValueError(f"unknown hint target `{value}` (expected good, good:<lo>-<hi> or bad)")


_PARSERS = {
    "techniques": lambda v: _names(v, cfg.TECHNIQUES, "technique"),
    "repetitions": int,
    "seed": int,
    "models": _models,
    "states": _range,
    "branches": _range,
    "joins": _range,
    "loops": _range,
    "max_cases": int,
    "min_cases": int,
    "faults": int,
    "max_revealing": float,
    "hints": lambda v: tuple(_hint_target(part) for part in split_list(v)),
    "metrics": lambda v: _names(v, cfg.METRICS, "metric"),
}
_RANGE_KEYS = ("states", "branches", "joins", "loops")


def parse_config(text: str, base_dir: str | Path = ".") -> ExperimentConfig:
    """Parse `key = value` lines; model paths are taken relative to ``base_dir``."""
    values: dict[str, object] = {}
    for number, line in content_lines(text):
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise FormatError("expected `key = value`", number, 1)
        if key not in _PARSERS:
            raise FormatError(f"unknown key `{key}`", number, 1)
        if key in values:
            raise FormatError(f"key `{key}` given twice", number, 1)
        try:
            values[key] = _PARSERS[key](value)
        except ValueError as e:
            raise FormatError(f"{key}: {e}", number, line.index("=") + 2) from e
    ranges = SyntheticRanges(**{k: values.pop(k) for k in _RANGE_KEYS if k in values})
    return ExperimentConfig(ranges=ranges, base_dir=Path(base_dir), **values)


# --- experiment objects -------------------------------------------------------

@dataclass(frozen=True)
class ExperimentObject:
    id: str
    model: LtsModel
    suite: TestSuite
    faults: FaultReport
    hints: dict[str, HintSet] = field(default_factory=dict)


def _draw(bounds: tuple[int, int], rng: RandomSource) -> int:
    lo, hi = bounds
    return lo + rng.index(hi - lo + 1)


def draw_params(ranges: SyntheticRanges, rng: RandomSource) -> LtsParams:
    """Parameters drawn from the ranges, then clamped to a feasible combination."""
    states = _draw(ranges.states, rng)
    branches = min(_draw(ranges.branches, rng), (states - 1) // 2)
    joins = min(_draw(ranges.joins, rng), branches)
    loops = min(_draw(ranges.loops, rng), branches)
    if joins == 0:
        loops = min(loops, 1)
    return LtsParams(states, branches, joins, loops)


def _objects_for(model: LtsModel, suite: TestSuite, config: ExperimentConfig, rng: RandomSource) -> list[ExperimentObject]:
    report = plant_faults(model, suite, config.faults, rng, config.max_revealing)
    objects = []
    for fault_id in report.faults:
        hints = {}
        if config.hinted:
            for target in config.hints:
                hints[target.kind] = synthesize_hint(suite, report, fault_id, model, target).as_hint_set()
        objects.append(ExperimentObject(f"{model.name}/{fault_id}", model, suite, report.only(fault_id), hints))
    return objects


def _synthetic_objects(config: ExperimentConfig, seed: int, name: str) -> list[ExperimentObject]:
    rng = RandomSource(derive_seed(seed, name, "model"))
    last = None
    for attempt in range(1, cfg.OBJECT_ATTEMPTS + 1):
        params = draw_params(config.ranges, rng)
        try:
            model = gen_random_lts(params, rng, name)
            suite = generate(model, path_cap=config.max_cases)
            if len(suite) < config.min_cases:
                logger.debug(f"Redrawing {name} (attempt {attempt}): {len(suite)} test case(s), below min_cases")
                continue
            objects = _objects_for(model, suite, config, rng)
        except (PathLimitError, EmptySuiteError, FaultPlantingError, HintSearchError, InfeasibleParametersError) as e:
            last = e
            logger.debug(f"Redrawing {name} (attempt {attempt}): {e}")
            continue
        logger.info(f"Model {name}: {params}, {len(suite)} test cases, {len(objects)} object(s)")
        return objects
    raise InfeasibleParametersError(f"no usable experiment object for {name} after {cfg.OBJECT_ATTEMPTS} draws: {last}")


def _file_objects(config: ExperimentConfig, seed: int, path: Path) -> list[ExperimentObject]:
    model = parse_model(read_text(path))
    suite = generate(model, path_cap=config.max_cases)
    rng = RandomSource(derive_seed(seed, model.name, "faults"))
    last = None
    for attempt in range(1, cfg.OBJECT_ATTEMPTS + 1):
        try:
            objects = _objects_for(model, suite, config, rng)
        except (FaultPlantingError, HintSearchError) as e:
            last = e
            logger.debug(f"Replanting faults in {model.name} (attempt {attempt}): {e}")
            continue
        logger.info(f"Model {model.name} from {path}: {len(suite)} test cases, {len(objects)} object(s)")
        return objects
    raise last


def build_objects(config: ExperimentConfig, seed: int) -> list[ExperimentObject]:
    objects: list[ExperimentObject] = []
    synthetic = 0
    for entry in config.models:
        if entry.startswith(SYNTHETIC_PREFIX):
            for _ in range(int(entry[len(SYNTHETIC_PREFIX):])):
                synthetic += 1
                objects.extend(_synthetic_objects(config, seed, f"syn{synthetic:02d}"))
        else:
            objects.extend(_file_objects(config, seed, config.base_dir / entry))
    ids = [obj.id for obj in objects]
    duplicated = sorted({i for i in ids if ids.count(i) > 1})
    if duplicated:
        raise FormatError(f"experiment objects share ids: {', '.join(duplicated)}")
    return objects


# --- trials -------------------------------------------------------------------

@dataclass(frozen=True)
class TrialRecord:
    model: str
    technique: str
    hint: str
    seed: int
    trial: int
    metric: str
    value: float

    @property
    def sort_key(self) -> tuple:
        return (self.model, self.technique, self.hint, self.trial, self.metric)


def trial_seed(base_seed: int, object_id: str, technique: str, hint: str, trial: int) -> int:
    return derive_seed(base_seed, object_id, technique, hint, trial)


def _rounded(value: Fraction) -> float:
    # records hold what the CSV holds, so summaries recomputed from a CSV match exactly
    return float(format_value(float(value)))


@dataclass(frozen=True)
class _Job:
    obj: ExperimentObject
    technique: str
    hint: str
    base_seed: int
    repetitions: int
    metrics: tuple[str, ...]


def _run_job(job: _Job) -> list[TrialRecord]:
    obj = job.obj
    hints = obj.hints.get(job.hint)
    records = []
    for trial in range(job.repetitions):
        seed = trial_seed(job.base_seed, obj.id, job.technique, job.hint, trial)
        try:
            order = prioritize(job.technique, obj.suite, obj.model, RandomSource(seed), hints)
            for metric in job.metrics:
                value = evaluate(metric, order, obj.faults).exact
                records.append(TrialRecord(obj.id, job.technique, job.hint, seed, trial, metric, _rounded(value)))
        except DomainError as e:
            logger.debug(f"Trial {trial} of {obj.id} with {job.technique}/{job.hint} failed: {e}")
            raise TrialError(obj.id, job.technique, job.hint, seed, trial, e) from e
    return records


def _run_parallel(jobs: list[_Job], workers: int) -> list[list[TrialRecord]]:
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_job, jobs))


# --- summaries ----------------------------------------------------------------

@dataclass(frozen=True)
class SummaryRow:
    model: str
    metric: str
    arm_a: str
    arm_b: str
    statistic: Fraction
    effect: str


@dataclass(frozen=True)
class AggregateRow:
    metric: str
    arm_a: str
    arm_b: str
    objects: int
    median: float
    below_medium: float
    below_large: float

    def as_dict(self) -> dict:
        return {
            "metric": self.metric,
            "arm_a": self.arm_a,
            "arm_b": self.arm_b,
            "objects": self.objects,
            "median": round(self.median, cfg.CSV_DECIMALS),
            f"share_below_{cfg.A12_MEDIUM[1]}": round(self.below_medium, cfg.CSV_DECIMALS),
            f"share_below_{cfg.A12_LARGE[1]}": round(self.below_large, cfg.CSV_DECIMALS),
        }


def _arm_key(arm: tuple[str, str]) -> tuple:
    technique, hint = arm
    rank = cfg.TECHNIQUES.index(technique) if technique in cfg.TECHNIQUES else len(cfg.TECHNIQUES)
    return rank, technique, hint


def summarize(records: list[TrialRecord]) -> list[SummaryRow]:
    """Pairwise A12 between every two arms (technique/hint) of each object and metric."""
    samples: dict[tuple[str, str], dict[tuple[str, str], list[float]]] = {}
    for r in records:
        samples.setdefault((r.model, r.metric), {}).setdefault((r.technique, r.hint), []).append(r.value)
    rows = []
    for model, metric in sorted(samples):
        arms = samples[(model, metric)]
        for a, b in combinations(sorted(arms, key=_arm_key), 2):
            statistic = a12_exact(arms[a], arms[b])
            rows.append(SummaryRow(model, metric, "/".join(a), "/".join(b), statistic, effect_label(float(statistic))))
    return rows


def aggregate(summary: list[SummaryRow]) -> list[AggregateRow]:
    """Per arm pair and metric: median statistic across objects and the shares under the medium and large bounds."""
    if not summary:
        return []
    frame = pd.DataFrame(
        [(r.metric, r.arm_a, r.arm_b, float(r.statistic)) for r in summary],
        columns=["metric", "arm_a", "arm_b", "statistic"],
    )
    frame["below_medium"] = frame["statistic"] < cfg.A12_MEDIUM[1]
    frame["below_large"] = frame["statistic"] < cfg.A12_LARGE[1]
    table = frame.groupby(["metric", "arm_a", "arm_b"], sort=False).agg(
        objects=("statistic", "size"),
        median=("statistic", "median"),
        below_medium=("below_medium", "mean"),
        below_large=("below_large", "mean"),
    )
    return [
        AggregateRow(
            metric, arm_a, arm_b, int(row["objects"]), float(row["median"]),
            float(row["below_medium"]), float(row["below_large"]),
        )
        for (metric, arm_a, arm_b), row in table.iterrows()
    ]


@dataclass
class ExperimentResult:
    records: list[TrialRecord]
    summary: list[SummaryRow]
    aggregate: list[AggregateRow]


def run_experiment(config: ExperimentConfig, seed: int | None = None, workers: int = 1) -> ExperimentResult:
    seed = config.seed if seed is None else seed
    if seed is None:
        raise ValueError("an experiment needs a base seed")
    objects = build_objects(config, seed)
    jobs = [
        _Job(obj, technique, hint, seed, config.repetitions, config.metrics)
        for obj in objects
        for technique in config.techniques
        for hint in config.hint_kinds(technique)
    ]
    logger.info(
        f"Running {len(jobs)} arm(s) x {config.repetitions} repetition(s) over {len(objects)} object(s) "
        f"with {workers} worker(s)"
    )
    if workers > 1:
        batches = _run_parallel(jobs, workers)
    else:
        batches = [_run_job(job) for job in jobs]
    records = sorted((r for batch in batches for r in batch), key=lambda r: r.sort_key)
    summary = summarize(records)
    logger.info(f"Experiment done: {len(records)} records, {len(summary)} summary rows")
    return ExperimentResult(records, summary, aggregate(summary))


# --- CSV ----------------------------------------------------------------------

def _to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=f"%.{cfg.CSV_DECIMALS}f", lineterminator="\n")


def serialize_records(records: list[TrialRecord]) -> str:
    frame = pd.DataFrame([astuple(r) for r in records], columns=cfg.CSV_HEADER.split(","))
    return _to_csv(frame)


def serialize_summary(summary: list[SummaryRow]) -> str:
    rows = [(r.model, r.metric, r.arm_a, r.arm_b, float(r.statistic), r.effect) for r in summary]
    return _to_csv(pd.DataFrame(rows, columns=cfg.SUMMARY_HEADER.split(",")))


def parse_records(text: str) -> list[TrialRecord]:
    header = cfg.CSV_HEADER.split(",")
    try:
        frame = pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise FormatError(f"malformed records: {e}") from e
    if list(frame.columns) != header:
        raise FormatError(f"expected header `{cfg.CSV_HEADER}`", 1, 1)
    records = []
    for number, row in enumerate(frame.itertuples(index=False), 2):
        try:
            records.append(TrialRecord(
                row.model, row.technique, row.hint, int(row.seed), int(row.trial), row.metric, float(row.value)
            ))
        except ValueError as e:
            raise FormatError(f"malformed record: {e}", number, 1) from e
    return records
