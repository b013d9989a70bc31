"""Fault-detection metrics (APFD, F-Measure) and the Vargha-Delaney A12 effect size."""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from scipy.stats import rankdata

import settings.config as cfg
from errors import EmptySampleError, FormatError, MetricUndefinedError, UndetectableFaultError
from prioritizers import PrioritizedSuite
from utils import content_lines, split_list

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FaultReport:
    faults: dict[str, frozenset[str]]
    causes: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for fault_id, revealing in self.faults.items():
            if not revealing:
                raise FormatError(f"fault {fault_id} is revealed by no test case")

    def __len__(self) -> int:
        return len(self.faults)

    @property
    def failing(self) -> frozenset[str]:
        return frozenset().union(*self.faults.values()) if self.faults else frozenset()

    def only(self, fault_id: str) -> "FaultReport":
        if fault_id not in self.faults:
            raise FormatError(f"unknown fault `{fault_id}`")
        causes = {fault_id: self.causes[fault_id]} if fault_id in self.causes else {}
        return FaultReport({fault_id: self.faults[fault_id]}, causes)

    def unknown_ids(self, ids) -> list[str]:
        known = set(ids)
        return sorted({tc for revealing in self.faults.values() for tc in revealing if tc not in known})


@dataclass(frozen=True)
class MetricValue:
    name: str
    exact: Fraction
    n: int
    m: int | None = None

    @property
    def value(self) -> float:
        return float(self.exact)


class EffectSize(NamedTuple):
    statistic: float
    label: str


def apfd(order: PrioritizedSuite, faults: FaultReport) -> MetricValue:
    """1 - (TF_1 + ... + TF_m) / (n m) + 1 / (2 n), with 1-based TF_i."""
    if not faults.faults:
        raise MetricUndefinedError("APFD needs at least one fault")
    n = len(order.order)
    positions = {tc_id: k for k, tc_id in enumerate(order.order, 1)}
    first_positions = []
    for fault_id, revealing in faults.faults.items():
        found = [positions[tc] for tc in revealing if tc in positions]
        if not found:
            raise UndetectableFaultError(f"fault {fault_id} is revealed by no test case in the order")
        first_positions.append(min(found))
    m = len(first_positions)
    exact = 1 - Fraction(sum(first_positions), n * m) + Fraction(1, 2 * n)
    return MetricValue("apfd", exact, n, m)


def f_measure(order: PrioritizedSuite, faults: FaultReport) -> MetricValue:
    """Number of test cases run before the first failing one (0 .. n-1)."""
    failing = faults.failing
    for k, tc_id in enumerate(order.order):
        if tc_id in failing:
            return MetricValue("fmeasure", Fraction(k), len(order.order))
    raise MetricUndefinedError("F-Measure is undefined: no test case in the order fails")


METRIC_FUNCTIONS = {"apfd": apfd, "fmeasure": f_measure}


def evaluate(metric: str, order: PrioritizedSuite, faults: FaultReport) -> MetricValue:
    try:
        return METRIC_FUNCTIONS[metric](order, faults)
    except KeyError:
        raise ValueError(f"unknown metric `{metric}`") from None


def effect_label(statistic: float) -> str:
    large_hi, large_lo = cfg.A12_LARGE
    medium_hi, medium_lo = cfg.A12_MEDIUM
    if statistic > large_hi or statistic < large_lo:
        return "large"
    if statistic > medium_hi or statistic < medium_lo:
        return "medium"
    return "small-or-negligible"


def a12_exact(sample_a: Sequence[float], sample_b: Sequence[float]) -> Fraction:
    """P(X > Y) + 0.5 P(X = Y) for X from A and Y from B, from mid-ranks of the pooled sample."""
    m, n = len(sample_a), len(sample_b)
    if m == 0 or n == 0:
        raise EmptySampleError("A12 needs two non-empty samples")
    ranks = rankdata(list(sample_a) + list(sample_b))
    twice_rank_sum = int(round(2 * float(ranks[:m].sum())))
    return Fraction(twice_rank_sum - m * (m + 1), 2 * m * n)


def a12(sample_a: Sequence[float], sample_b: Sequence[float]) -> EffectSize:
    statistic = float(a12_exact(sample_a, sample_b))
    return EffectSize(statistic, effect_label(statistic))


def parse_fault_report(text: str) -> FaultReport:
    faults: dict[str, frozenset[str]] = {}
    causes: dict[str, str] = {}
    for raw in text.split("\n"):
        line = raw.rstrip("\r").strip()
        if line.startswith("# cause "):
            fault_id, sep, cause = line[len("# cause "):].partition(" : ")
            if sep:
                causes[fault_id.strip()] = cause.strip()
    for number, line in content_lines(text):
        head, sep, body = line.partition(" : ")
        parts = head.split()
        if not sep or len(parts) != 2 or parts[0] != "fault":
            raise FormatError("expected `fault <id> : <tc-id>[, <tc-id>]*`", number, 1)
        fault_id = parts[1]
        if fault_id in faults:
            raise FormatError(f"fault {fault_id} declared twice", number, 1)
        revealing = split_list(body)
        if not revealing:
            raise FormatError(f"fault {fault_id} lists no test case", number, len(head) + 4)
        faults[fault_id] = frozenset(revealing)
    if not faults:
        raise FormatError("fault report holds no faults")
    return FaultReport(faults, {k: v for k, v in causes.items() if k in faults})


def serialize_fault_report(report: FaultReport, order_hint: Sequence[str] = ()) -> str:
    """Revealing ids are written in ``order_hint`` order when given (suite order), else sorted."""
    rank = {tc_id: k for k, tc_id in enumerate(order_hint)}
    lines = []
    for fault_id, revealing in report.faults.items():
        ids = sorted(revealing, key=lambda tc: (rank.get(tc, len(rank)), tc))
        if fault_id in report.causes:
            lines.append(f"# cause {fault_id} : {report.causes[fault_id]}")
        lines.append(f"fault {fault_id} : {', '.join(ids)}")
    return "\n".join(lines) + "\n"
