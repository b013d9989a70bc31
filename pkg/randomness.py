"""Seeded random streams.

Streams are numpy PCG64 generators keyed by a SeedSequence, which is stable
across platforms and numpy releases for a given seed.
"""
import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def derive_seed(base_seed: int, *parts: str | int) -> int:
    """A 63-bit seed that depends only on its arguments."""
    digest = hashlib.sha256(repr((int(base_seed),) + tuple(str(p) for p in parts)).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


class RandomSource:
    def __init__(self, seed: int):
        self.seed = int(seed)
        sequence = np.random.SeedSequence(self.seed & _MASK64)
        self._generator = np.random.Generator(np.random.PCG64(sequence))

    def uniform(self) -> float:
        return float(self._generator.random())

    def index(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("cannot draw from an empty range")
        return int(self._generator.integers(n))

    def permutation(self, n: int) -> list[int]:
        return [int(i) for i in self._generator.permutation(n)]

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed})"
