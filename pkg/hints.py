"""Good and bad hint synthesis from a suite and its fault report.

A good hint filters a set in which a target share (20-50% by default) of the
cases fail for the fault; a bad hint filters a non-empty set where none fail.
Candidates are `* | L | *` purposes over labels of the failing cases and,
when none of those lands in range, `* | L1 | * | L2 | *` purposes over label
pairs taken in order from failing cases.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import settings.config as cfg
from errors import HintSearchError, MetricUndefinedError
from evaluation import FaultReport
from lts import LtsModel
from purpose import HintSet, LabelIndex, TestPurpose, filter_suite, literal_purpose
from testgen import TestSuite
from utils import format_value

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HintQualityTarget:
    kind: str
    low: float = 0.0
    high: float = 0.0

    def __post_init__(self):
        if self.kind not in ("good", "bad"):
            raise ValueError(f"hint kind must be good or bad, got `{self.kind}`")
        if self.kind == "bad" and (self.low, self.high) != (0.0, 0.0):
            raise ValueError("a bad hint target is fixed at [0, 0]")
        if not 0.0 <= self.low <= self.high <= 1.0:
            raise ValueError(f"invalid proportion range [{self.low}, {self.high}]")

    @classmethod
    def good(cls, low: float = cfg.GOOD_HINT_RANGE[0], high: float = cfg.GOOD_HINT_RANGE[1]) -> "HintQualityTarget":
        return cls("good", low, high)

    @classmethod
    def bad(cls) -> "HintQualityTarget":
        return cls("bad")

    def accepts(self, proportion: Fraction) -> bool:
        return Fraction(str(self.low)) <= proportion <= Fraction(str(self.high))

    def __str__(self) -> str:
        return "bad" if self.kind == "bad" else f"good:{self.low:.2f}-{self.high:.2f}"


@dataclass(frozen=True)
class SynthesizedHint:
    purpose: TestPurpose
    kind: str
    proportion: Fraction
    fault_id: str

    @property
    def provenance(self) -> str:
        return f"synthesized {self.kind}, proportion={format_value(float(self.proportion))}, fault={self.fault_id}"

    def as_hint_set(self) -> HintSet:
        return HintSet((self.purpose,), (self.provenance,))


def _share(filtered, failing: frozenset[str]) -> Fraction | None:
    if not filtered:
        return None
    return Fraction(sum(1 for tc in filtered if tc.id in failing), len(filtered))


def _proportion(suite: TestSuite, purpose: TestPurpose, failing: frozenset[str], model: LtsModel) -> Fraction | None:
    return _share(filter_suite(suite, HintSet((purpose,)), model).cases, failing)


def hint_quality(suite: TestSuite, purpose: TestPurpose, faults: FaultReport, model: LtsModel) -> Fraction:
    """Share of the purpose's filtered set that fails."""
    proportion = _proportion(suite, purpose, faults.failing, model)
    if proportion is None:
        raise MetricUndefinedError(f"purpose `{purpose.text}` filters no test case")
    return proportion


def _best(scored: list[tuple[Fraction, str, TestPurpose]]) -> tuple[Fraction, str, TestPurpose]:
    # highest proportion first, then lexicographic purpose text
    return min(scored, key=lambda item: (-item[0], item[1]))


def synthesize_hint(
    suite: TestSuite,
    faults: FaultReport,
    fault_id: str,
    model: LtsModel,
    target: HintQualityTarget,
) -> SynthesizedHint:
    fault = faults.only(fault_id)
    failing = fault.failing
    failing_cases = [tc for tc in suite.cases if tc.id in failing]
    if not failing_cases:
        raise HintSearchError(f"fault {fault_id} is revealed by no test case of the suite")
    index = LabelIndex(suite.cases)
    failing_labels = sorted({label for tc in failing_cases for label in tc.labels})
    seen: dict[tuple[str, ...], Fraction | None] = {}

    def score(candidates: list[tuple[str, ...]]) -> list[tuple[Fraction, str, TestPurpose]]:
        scored = []
        for labels in candidates:
            if labels in seen:
                continue
            proportion = seen[labels] = _share(index.matching(labels), failing)
            if proportion is not None and target.accepts(proportion):
                purpose = literal_purpose(*labels)
                scored.append((proportion, purpose.text, purpose))
        return scored

    if target.kind == "bad":
        others = sorted({label for tc in suite.cases for label in tc.labels} - set(failing_labels))
        scored = score([(label,) for label in others])
    else:
        scored = score([(label,) for label in failing_labels])
        if not scored:
            logger.debug(f"No single-label purpose in range for fault {fault_id}; trying label pairs")
            scored = score(sorted({pair for tc in failing_cases for pair in combinations(tc.labels, 2)}))

    if not scored:
        achieved = sorted({p for p in seen.values() if p is not None})
        shown = ", ".join(format_value(float(p)) for p in achieved) or "none (no candidate filtered any case)"
        logger.info(f"Hint search failed for fault {fault_id} with target {target}")
        raise HintSearchError(
            f"no purpose reaches the {target} target for fault {fault_id}; achievable proportions: {shown}"
        )
    proportion, _, purpose = _best(scored)
    logger.info(f"Synthesized {target.kind} hint `{purpose.text}` for fault {fault_id} (proportion {float(proportion):.4f})")
    return SynthesizedHint(purpose, target.kind, proportion, fault_id)
