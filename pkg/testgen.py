"""Loop-bounded test suite generation and the suite file format."""
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import settings.config as cfg
from errors import EmptySuiteError, FormatError, PathLimitError, UnresolvableStepError
from lts import LtsModel, Transition
from utils import content_lines

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TestCase:
    __test__ = False

    id: str
    steps: tuple[Transition, ...]

    def __post_init__(self):
        if not self.steps:
            raise EmptySuiteError(f"test case {self.id} has no steps")
        for k, (a, b) in enumerate(zip(self.steps, self.steps[1:]), 1):
            if a.dst != b.src:
                raise FormatError(f"test case {self.id}: step {k} ends at {a.dst} but step {k + 1} starts at {b.src}")

    def __len__(self) -> int:
        return len(self.steps)

    @cached_property
    def node_seq(self) -> tuple[str, ...]:
        return (self.steps[0].src,) + tuple(t.dst for t in self.steps)

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return tuple(t.label for t in self.steps)


@dataclass(frozen=True)
class TestSuite:
    __test__ = False

    model_name: str
    cases: tuple[TestCase, ...]

    def __post_init__(self):
        ids = [tc.id for tc in self.cases]
        duplicated = sorted(i for i, count in Counter(ids).items() if count > 1)
        if duplicated:
            raise FormatError(f"duplicate test case ids: {', '.join(duplicated)}")

    def __len__(self) -> int:
        return len(self.cases)

    def __iter__(self):
        return iter(self.cases)

    @cached_property
    def by_id(self) -> dict[str, TestCase]:
        return {tc.id: tc for tc in self.cases}

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(tc.id for tc in self.cases)

    def subset(self, cases) -> "TestSuite":
        return TestSuite(self.model_name, tuple(cases))


@dataclass(frozen=True)
class SuiteStats:
    count: int
    shortest: int | None
    longest: int | None
    kinds: dict[str, int] = field(default_factory=dict)


@dataclass
class _Frame:
    edges: object
    segment: frozenset
    events: int
    extended: bool = False


def generate(model: LtsModel, loop_bound: int = cfg.LOOP_BOUND, path_cap: int = cfg.PATH_CAP) -> TestSuite:
    """Enumerate every maximal path from the initial state, cutting each path at its loop_bound-th loop event.

    A loop event is a step whose target already occurs in the current loop-free
    segment of the path; every loop event opens a new segment at its target.
    """
    if loop_bound < 0:
        raise ValueError("loop_bound must be >= 0")
    outgoing = model.outgoing
    paths: list[tuple[Transition, ...]] = []
    steps: list[Transition] = []

    def emit():
        paths.append(tuple(steps))
        if len(paths) > path_cap:
            logger.debug(f"Path cap {path_cap} exceeded while generating from {model.name}")
            raise PathLimitError(path_cap)

    stack = [_Frame(iter(outgoing.get(model.initial, ())), frozenset({model.initial}), 0)]
    while stack:
        frame = stack[-1]
        step = next(frame.edges, None)
        if step is None:
            stack.pop()
            if not frame.extended and steps:
                emit()
            if steps:
                steps.pop()
            continue
        loop_event = step.dst in frame.segment
        if loop_event and loop_bound == 0:
            continue
        frame.extended = True
        steps.append(step)
        if not loop_event:
            stack.append(_Frame(iter(outgoing.get(step.dst, ())), frame.segment | {step.dst}, frame.events))
        elif frame.events + 1 >= loop_bound:
            emit()
            steps.pop()
        else:
            stack.append(_Frame(iter(outgoing.get(step.dst, ())), frozenset({step.dst}), frame.events + 1))

    if not paths:
        logger.warning(f"Model {model.name} has no transitions from initial state {model.initial}; suite is empty")
    cases = tuple(TestCase(f"TC{k}", path) for k, path in enumerate(paths, 1))
    logger.info(f"Generated {len(cases)} test cases from {model.name} (loop bound {loop_bound})")
    return TestSuite(model.name, cases)


def suite_stats(suite: TestSuite) -> SuiteStats:
    if not suite.cases:
        return SuiteStats(0, None, None, {})
    lengths = [len(tc) for tc in suite.cases]
    kinds = Counter(t.kind for tc in suite.cases for t in tc.steps)
    return SuiteStats(len(lengths), min(lengths), max(lengths), dict(sorted(kinds.items())))


def serialize_suite(suite: TestSuite) -> str:
    lines = [f"suite {suite.model_name}"]
    for tc in suite.cases:
        steps = " ; ".join(f"{t.src} -> {t.dst}" for t in tc.steps)
        lines.append(f"tc {tc.id} : {steps}")
    return "\n".join(lines) + "\n"


def parse_suite(text: str, model: LtsModel | None = None) -> TestSuite:
    """Parse a suite file; steps are resolved to labelled transitions when a model is given."""
    model_name = None
    cases: list[TestCase] = []
    for number, line in content_lines(text):
        if model_name is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "suite":
                raise FormatError("expected `suite <modelName>` as the first line", number, 1)
            model_name = parts[1]
            if model is not None and model.name != model_name:
                logger.warning(f"Suite refers to model {model_name} but model {model.name} was given")
            continue
        head, sep, body = line.partition(" : ")
        parts = head.split()
        if not sep or len(parts) != 2 or parts[0] != "tc":
            raise FormatError("expected `tc <id> : <src> -> <dst>[ ; <src> -> <dst>]*`", number, 1)
        tc_id = parts[1]
        steps = []
        for k, chunk in enumerate(body.split(";"), 1):
            ends = chunk.split("->")
            if len(ends) != 2 or not ends[0].strip() or not ends[1].strip():
                raise FormatError(f"test case {tc_id}: malformed step {k} `{chunk.strip()}`", number)
            src, dst = ends[0].strip(), ends[1].strip()
            steps.append(_resolve(model, src, dst, tc_id, k, number))
        try:
            cases.append(TestCase(tc_id, tuple(steps)))
        except FormatError as e:
            raise FormatError(e.message, number) from e
    if model_name is None:
        raise FormatError("empty document: expected `suite <modelName>`", 1, 1)
    try:
        return TestSuite(model_name, tuple(cases))
    except FormatError as e:
        raise FormatError(e.message) from e


def _resolve(model: LtsModel | None, src: str, dst: str, tc_id: str, k: int, number: int) -> Transition:
    if model is None:
        return Transition(src, dst, "")
    found = model.by_endpoints.get((src, dst), ())
    if not found:
        raise UnresolvableStepError(f"line {number}: test case {tc_id} step {k} ({src} -> {dst}) has no transition in model {model.name}")
    if len(found) > 1:
        raise UnresolvableStepError(f"line {number}: test case {tc_id} step {k} ({src} -> {dst}) is ambiguous in model {model.name}")
    return found[0]
