"""Resemblance between test cases: the MBT similarity function and the Jaccard distance.

similarity(a, b) = (nip + |sit|) / ((|a| + |b| + |sdt(a)| + |sdt(b)|) / 2)

with sdt the set of distinct transitions of a test case, sit = sdt(a) & sdt(b)
and nip taken as |sit|.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import sparse

from errors import EmptySuiteError
from lts import Transition
from testgen import TestCase

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransitionProfile:
    seq: tuple[Transition, ...]
    distinct: frozenset[Transition]
    counts: Counter

    @classmethod
    def of(cls, tc: TestCase) -> "TransitionProfile":
        if not tc.steps:
            raise EmptySuiteError(f"test case {tc.id} has a zero-length profile")
        return cls(tuple(tc.steps), frozenset(tc.steps), Counter(tc.steps))


def _profiles(a: TestCase, b: TestCase) -> tuple[TransitionProfile, TransitionProfile]:
    return TransitionProfile.of(a), TransitionProfile.of(b)


def identical_pairs(pa: TransitionProfile, pb: TransitionProfile) -> int:
    return len(pa.distinct & pb.distinct)


def similarity_exact(a: TestCase, b: TestCase) -> Fraction:
    pa, pb = _profiles(a, b)
    sit = len(pa.distinct & pb.distinct)
    nip = identical_pairs(pa, pb)
    return Fraction(2 * (nip + sit), len(pa.seq) + len(pb.seq) + len(pa.distinct) + len(pb.distinct))


def similarity(a: TestCase, b: TestCase) -> float:
    pa, pb = _profiles(a, b)
    sit = len(pa.distinct & pb.distinct)
    nip = identical_pairs(pa, pb)
    return 2 * (nip + sit) / (len(pa.seq) + len(pb.seq) + len(pa.distinct) + len(pb.distinct))


def jaccard_distance(a: TestCase, b: TestCase) -> float:
    pa, pb = _profiles(a, b)
    inter = len(pa.distinct & pb.distinct)
    return 1 - inter / (len(pa.distinct) + len(pb.distinct) - inter)


class ProfileIndex:
    """Test cases of one suite as rows of a sparse 0/1 transition-incidence matrix.

    The pairwise overlap counts |sdt(a) & sdt(b)| come from one sparse product
    at construction; the arithmetic on them is the same as in
    similarity/jaccard_distance, so the values agree bit for bit with the
    scalar functions.
    """

    def __init__(self, cases: Sequence[TestCase]):
        self.cases = tuple(cases)
        columns: dict[Transition, int] = {}
        rows: list[int] = []
        cols: list[int] = []
        self.masks: list[int] = []
        for row, tc in enumerate(self.cases):
            if not tc.steps:
                raise EmptySuiteError(f"test case {tc.id} has a zero-length profile")
            mask = 0
            for t in dict.fromkeys(tc.steps):
                col = columns.setdefault(t, len(columns))
                rows.append(row)
                cols.append(col)
                mask |= 1 << col
            self.masks.append(mask)
        self.columns = columns
        self.incidence = sparse.csr_matrix(
            (np.ones(len(rows)), (rows, cols)), shape=(len(self.cases), max(len(columns), 1))
        )
        self.overlap = (self.incidence @ self.incidence.T).toarray()
        self.lengths = np.array([len(tc) for tc in self.cases], dtype=np.float64)
        self.distinct = np.diag(self.overlap).copy()
        self.position = {tc.id: row for row, tc in enumerate(self.cases)}
        logger.debug(f"Profile index over {len(self.cases)} test cases and {len(columns)} transitions")

    def __len__(self) -> int:
        return len(self.cases)

    def intersections(self, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
        return self.overlap[np.ix_(list(rows), list(cols))]

    def similarity_matrix(self, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
        rows, cols = list(rows), list(cols)
        sit = self.intersections(rows, cols)
        denominator = (
            self.lengths[rows][:, None] + self.lengths[cols][None, :]
            + self.distinct[rows][:, None] + self.distinct[cols][None, :]
        )
        return 2 * (sit + sit) / denominator

    def jaccard_matrix(self, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
        rows, cols = list(rows), list(cols)
        inter = self.intersections(rows, cols)
        union = self.distinct[rows][:, None] + self.distinct[cols][None, :] - inter
        return 1 - inter / union

    def similarity_to_all(self, row: int) -> np.ndarray:
        sit = self.overlap[row]
        denominator = self.lengths[row] + self.lengths + self.distinct[row] + self.distinct
        return 2 * (sit + sit) / denominator

    def jaccard_to_all(self, row: int) -> np.ndarray:
        inter = self.overlap[row]
        return 1 - inter / (self.distinct[row] + self.distinct - inter)
