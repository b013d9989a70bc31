"""Test purposes: pipe-separated label patterns with `*` wildcards, and suite filtering."""
import logging
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Sequence

from errors import PurposeSyntaxError, UnresolvableStepError
from lts import LtsModel
from testgen import TestCase, TestSuite

logger = logging.getLogger(__name__)

WILDCARD_TEXT = "*"
PROVENANCE_MARK = "  #"


class Wildcard:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Wildcard"

    def __reduce__(self):
        return (Wildcard, ())


WILDCARD = Wildcard()


@dataclass(frozen=True)
class LabelLiteral:
    text: str

    def __repr__(self) -> str:
        return f"Literal({self.text!r})"


@dataclass(frozen=True)
class TestPurpose:
    __test__ = False

    tokens: tuple

    @property
    def text(self) -> str:
        return " | ".join(WILDCARD_TEXT if t is WILDCARD else t.text for t in self.tokens)

    @property
    def literals(self) -> tuple[str, ...]:
        return tuple(t.text for t in self.tokens if t is not WILDCARD)

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class HintSet:
    purposes: tuple[TestPurpose, ...]
    provenance: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.purposes:
            raise PurposeSyntaxError("a hint set needs at least one purpose")
        if self.provenance and len(self.provenance) != len(self.purposes):
            raise PurposeSyntaxError("provenance must be given for every purpose or for none")

    @classmethod
    def of(cls, *texts: str) -> "HintSet":
        return cls(tuple(parse_purpose(t) for t in texts))


def parse_purpose(text: str) -> TestPurpose:
    if not text or not text.strip():
        raise PurposeSyntaxError("empty test purpose")
    tokens = []
    for position, piece in enumerate(text.split("|"), 1):
        piece = piece.strip()
        if not piece:
            raise PurposeSyntaxError(f"empty piece at position {position} in purpose `{text}`")
        tokens.append(WILDCARD if piece == WILDCARD_TEXT else LabelLiteral(piece))
    return TestPurpose(tuple(tokens))


def literal_purpose(*labels: str) -> TestPurpose:
    """The `* | L1 | * | L2 | *` form: each label may occur anywhere, in the given order."""
    tokens = [WILDCARD]
    for label in labels:
        tokens.extend((LabelLiteral(label), WILDCARD))
    return TestPurpose(tuple(tokens))


def match_labels(purpose: TestPurpose, labels: tuple[str, ...] | list[str]) -> bool:
    """Anchored match: a wildcard absorbs zero or more labels, a literal exactly one equal label."""
    # reachable[j]: tokens consumed so far can end right before labels[j]
    n = len(labels)
    reachable = [True] + [False] * n
    for token in purpose.tokens:
        if token is WILDCARD:
            seen = False
            for j in range(n + 1):
                seen = seen or reachable[j]
                reachable[j] = seen
        else:
            shifted = [False] * (n + 1)
            for j in range(n):
                if reachable[j] and labels[j] == token.text:
                    shifted[j + 1] = True
            reachable = shifted
        if not any(reachable):
            return False
    return reachable[n]


def matches(purpose: TestPurpose, tc: TestCase, model: LtsModel) -> bool:
    for k, step in enumerate(tc.steps, 1):
        if not model.has_transition(step):
            raise UnresolvableStepError(
                f"test case {tc.id} step {k} ({step.src} -> {step.dst}) does not resolve to a transition of {model.name}"
            )
    return match_labels(purpose, tc.labels)


def filter_suite(suite: TestSuite, hints: HintSet, model: LtsModel) -> TestSuite:
    """Test cases matching at least one purpose, in suite order."""
    kept = [tc for tc in suite.cases if any(matches(p, tc, model) for p in hints.purposes)]
    logger.debug(f"Filtered {len(kept)} of {len(suite)} test cases with {len(hints.purposes)} purpose(s)")
    return suite.subset(kept)


def parse_purpose_file(text: str) -> HintSet:
    purposes = []
    provenance = []
    for number, raw in enumerate(text.split("\n"), 1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        body, mark, note = line.partition(PROVENANCE_MARK)
        try:
            purposes.append(parse_purpose(body))
        except PurposeSyntaxError as e:
            raise PurposeSyntaxError(f"line {number}: {e}") from e
        provenance.append(note.strip() if mark else "")
    if not purposes:
        raise PurposeSyntaxError("purpose file holds no purposes")
    return HintSet(tuple(purposes), tuple(provenance))


def format_purpose_line(purpose: TestPurpose, provenance: str = "") -> str:
    return f"{purpose.text}{PROVENANCE_MARK} {provenance}" if provenance else purpose.text


def serialize_hints(hints: HintSet) -> str:
    notes = hints.provenance or ("",) * len(hints.purposes)
    return "".join(format_purpose_line(p, n) + "\n" for p, n in zip(hints.purposes, notes))


class LabelIndex:
    """Label positions per test case.

    Answers `* | L1 | * | ... | Lk | *` purposes (labels in order, anything
    around them) with a bisect walk instead of the general matcher; searches
    that score thousands of such purposes go through here.
    """

    def __init__(self, cases: Sequence[TestCase]):
        self.cases = tuple(cases)
        self.positions: list[dict[str, list[int]]] = []
        for tc in self.cases:
            where: dict[str, list[int]] = {}
            for k, label in enumerate(tc.labels):
                where.setdefault(label, []).append(k)
            self.positions.append(where)

    @staticmethod
    def _in_order(where: dict[str, list[int]], labels: Sequence[str]) -> bool:
        cursor = -1
        for label in labels:
            spots = where.get(label)
            if not spots:
                return False
            k = bisect_right(spots, cursor)
            if k == len(spots):
                return False
            cursor = spots[k]
        return True

    def matching(self, labels: Sequence[str]) -> list[TestCase]:
        return [tc for tc, where in zip(self.cases, self.positions) if self._in_order(where, labels)]
