"""Prioritization techniques: HARP (similarity or Jaccard resemblance), ARP-Jaccard, greedy-by-steps, random."""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

import settings.config as cfg
from errors import DegenerateHintError, EmptySuiteError, FormatError, SelectionMismatchError
from lts import LtsModel
from purpose import HintSet, filter_suite
from randomness import RandomSource
from resemblance import ProfileIndex, jaccard_distance, similarity
from testgen import TestCase, TestSuite
from utils import content_lines

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrioritizedSuite:
    technique: str
    seed: int
    order: tuple[str, ...]

    def position(self, tc_id: str) -> int:
        """1-based position of a test case."""
        return self.order.index(tc_id) + 1


def gen_candidate_set(
    remaining: Sequence[int],
    remaining_hint_related: Sequence[int],
    index: ProfileIndex,
    rng: RandomSource,
    limit: int = cfg.CANDIDATE_LIMIT,
) -> list[int]:
    """Random candidates that keep increasing transition coverage, at most ``limit`` of them.

    ``remaining`` holds the not-yet-placed cases outside the hint-related pool.
    A draw comes from the hint-related pool when v < 0.5 (v drawn only while
    both pools have cases), otherwise from ``remaining``. The first draw that
    adds no coverage ends the set and goes back to its pool.
    """
    plain = list(remaining)
    hinted = list(remaining_hint_related)
    if not plain and not hinted:
        raise EmptySuiteError("no remaining test cases to draw candidates from")
    candidates: list[int] = []
    covered = 0
    while len(candidates) < limit and (plain or hinted):
        if plain and hinted:
            pool = hinted if rng.uniform() < cfg.HINT_DRAW_PROBABILITY else plain
        else:
            pool = hinted or plain
        drawn = pool.pop(rng.index(len(pool)))
        mask = index.masks[drawn]
        if candidates and covered | mask == covered:
            break
        candidates.append(drawn)
        covered |= mask
    logger.debug(f"Candidate set {[index.cases[c].id for c in candidates]}")
    return candidates


def select_next(prioritized: Sequence[int], candidates: Sequence[int], index: ProfileIndex) -> int:
    """Candidate holding the largest cell of the prioritized x candidates similarity matrix.

    Ties go to the lowest candidate-list position.
    """
    matrix = index.similarity_matrix(prioritized, candidates)
    return candidates[int(np.argmax(matrix.max(axis=0)))]


def select_farthest(prioritized: Sequence[int], candidates: Sequence[int], index: ProfileIndex) -> int:
    """Candidate whose minimum Jaccard distance to the prioritized cases is largest."""
    matrix = index.jaccard_matrix(prioritized, candidates)
    return candidates[int(np.argmax(matrix.min(axis=0)))]


def brute_force_select(prioritized: Sequence[int], candidates: Sequence[int], index: ProfileIndex, resemblance: str) -> int:
    cases = index.cases
    best, best_value = None, None
    for j in candidates:
        if resemblance == "similarity":
            value = max(similarity(cases[i], cases[j]) for i in prioritized)
        else:
            value = min(jaccard_distance(cases[i], cases[j]) for i in prioritized)
        if best_value is None or value > best_value:
            best, best_value = j, value
    return best


class _Tracker:
    """Running per-case score against the prioritized prefix.

    For similarity the score is the max similarity to any placed case, for
    Jaccard the min distance; picking the best-scored candidate is the same
    as scanning the full matrix, without rebuilding it every iteration.
    """

    def __init__(self, index: ProfileIndex, resemblance: str):
        self.index = index
        self.resemblance = resemblance
        n = len(index)
        self.score = np.full(n, -np.inf if resemblance == "similarity" else np.inf)

    def place(self, row: int):
        if self.resemblance == "similarity":
            np.maximum(self.score, self.index.similarity_to_all(row), out=self.score)
        else:
            np.minimum(self.score, self.index.jaccard_to_all(row), out=self.score)

    def pick(self, candidates: Sequence[int]) -> int:
        return candidates[int(np.argmax(self.score[list(candidates)]))]


def _adaptive(
    index: ProfileIndex,
    hint_related: set[int],
    first_pool: Sequence[int],
    rng: RandomSource,
    resemblance: str,
    technique: str,
    debug: bool,
) -> PrioritizedSuite:
    first = first_pool[rng.index(len(first_pool))]
    prioritized = [first]
    plain = [i for i in range(len(index)) if i != first and i not in hint_related]
    hinted = [i for i in range(len(index)) if i != first and i in hint_related]
    tracker = _Tracker(index, resemblance)
    tracker.place(first)
    logger.debug(f"{technique}: first pick {index.cases[first].id}")

    while plain or hinted:
        candidates = gen_candidate_set(plain, hinted, index, rng)
        chosen = tracker.pick(candidates)
        if debug:
            expected = brute_force_select(prioritized, candidates, index, resemblance)
            if resemblance == "similarity":
                matrix_pick = select_next(prioritized, candidates, index)
            else:
                matrix_pick = select_farthest(prioritized, candidates, index)
            if not chosen == expected == matrix_pick:
                raise SelectionMismatchError(
                    f"{technique}: selection disagreement at step {len(prioritized) + 1}: "
                    f"tracked {index.cases[chosen].id}, matrix {index.cases[matrix_pick].id}, "
                    f"brute force {index.cases[expected].id}"
                )
        prioritized.append(chosen)
        tracker.place(chosen)
        (hinted if chosen in hint_related else plain).remove(chosen)

    order = tuple(index.cases[i].id for i in prioritized)
    logger.info(f"{technique} (seed {rng.seed}) ordered {len(order)} test cases")
    return PrioritizedSuite(technique, rng.seed, order)


@lru_cache(maxsize=16)
def _profile_index(cases: tuple[TestCase, ...]) -> ProfileIndex:
    return ProfileIndex(cases)


@lru_cache(maxsize=16)
def _hint_related_ids(suite: TestSuite, hints: HintSet, model: LtsModel) -> frozenset[str]:
    return frozenset(filter_suite(suite, hints, model).ids)


def harp(
    suite: TestSuite,
    hints: HintSet,
    model: LtsModel,
    rng: RandomSource,
    resemblance: str = "similarity",
    debug: bool = False,
) -> PrioritizedSuite:
    """Hint-anchored adaptive random prioritization.

    The first case is drawn from the hint-filtered set, candidate sets lean
    towards hint-related cases, and the next case is the candidate most
    similar to the already placed ones (or, with ``resemblance="jaccard"``,
    the one farthest away by minimum Jaccard distance).
    """
    if not suite.cases:
        raise EmptySuiteError("cannot prioritize an empty suite")
    if resemblance not in ("similarity", "jaccard"):
        raise ValueError(f"unknown resemblance `{resemblance}`")
    if hints is None:
        raise ValueError("HARP needs a hint set")
    related = _hint_related_ids(suite, hints, model)
    if not related:
        logger.debug(f"No test case matches the {len(hints.purposes)} given purpose(s)")
        raise DegenerateHintError(
            "no test case matches any hint purpose; HARP needs a non-empty filtered set, "
            "use the arp-jaccard technique instead"
        )
    index = _profile_index(suite.cases)
    hint_related = {index.position[tc_id] for tc_id in related}
    technique = "harp" if resemblance == "similarity" else "harp-jaccard"
    return _adaptive(index, hint_related, sorted(hint_related), rng, resemblance, technique, debug)


def arp_jaccard(suite: TestSuite, model: LtsModel, rng: RandomSource, debug: bool = False) -> PrioritizedSuite:
    """Adaptive random prioritization with Jaccard distance and max-min selection."""
    if not suite.cases:
        raise EmptySuiteError("cannot prioritize an empty suite")
    index = _profile_index(suite.cases)
    return _adaptive(index, set(), list(range(len(index))), rng, "jaccard", "arp-jaccard", debug)


def greedy_steps(suite: TestSuite) -> PrioritizedSuite:
    """Longest test cases first; equal lengths keep suite order."""
    order = tuple(tc.id for tc in sorted(suite.cases, key=lambda tc: -len(tc)))
    return PrioritizedSuite("greedy", 0, order)


def random_order(suite: TestSuite, rng: RandomSource) -> PrioritizedSuite:
    order = tuple(suite.cases[i].id for i in rng.permutation(len(suite.cases)))
    return PrioritizedSuite("random", rng.seed, order)


def prioritize(
    technique: str,
    suite: TestSuite,
    model: LtsModel | None,
    rng: RandomSource | None,
    hints: HintSet | None = None,
    debug: bool = False,
) -> PrioritizedSuite:
    if technique == "harp":
        return harp(suite, hints, model, rng, "similarity", debug)
    if technique == "harp-jaccard":
        return harp(suite, hints, model, rng, "jaccard", debug)
    if technique == "arp-jaccard":
        return arp_jaccard(suite, model, rng, debug)
    if technique == "greedy":
        return greedy_steps(suite)
    if technique == "random":
        return random_order(suite, rng)
    raise ValueError(f"unknown technique `{technique}`")


def serialize_order(order: PrioritizedSuite) -> str:
    return f"order {order.technique} seed={order.seed}\n" + "".join(f"{tc_id}\n" for tc_id in order.order)


def parse_order(text: str) -> PrioritizedSuite:
    header = None
    ids: list[str] = []
    for number, line in content_lines(text):
        if header is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "order" or not parts[2].startswith("seed="):
                raise FormatError("expected `order <technique> seed=<n>`", number, 1)
            try:
                header = (parts[1], int(parts[2][5:]))
            except ValueError:
                raise FormatError(f"seed must be an integer, got `{parts[2][5:]}`", number, len(parts[0]) + len(parts[1]) + 3)
            continue
        tc_id = line.strip()
        if tc_id in ids:
            raise FormatError(f"test case {tc_id} listed twice", number, 1)
        ids.append(tc_id)
    if header is None:
        raise FormatError("empty document: expected `order <technique> seed=<n>`", 1, 1)
    return PrioritizedSuite(header[0], header[1], tuple(ids))
