"""Deterministic 64-bit pseudo-random generator with an explicit stream-split rule.

Everything stochastic in this package is driven by SplitMix64, seeded
explicitly.  Replays are bit-exact across runs, platforms and worker
schedules because per-sample streams are derived from (master seed,
sample index) alone, never from worker identity or draw order.

Stream-split rule:
    subseed(master, index) = mix64(mix64(master) ^ mix64(index + GOLDEN))

where mix64 is the SplitMix64 finalizer.  Sample indexes 0..N-1 address the
samples of an experiment; negative indexes are reserved for auxiliary draws
(-1: support randomization).
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a 64-bit bijective scrambler."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def subseed(master: int, index: int) -> int:
    """Derive the seed of stream `index` from a master seed (see module doc)."""
    return mix64(mix64(master) ^ mix64((index + _GOLDEN) & _MASK64))


class SplitMix64:
    """The SplitMix64 sequential generator (Steele, Lea & Flood)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return mix64(self._state)

    def next_bit(self) -> int:
        return self.next_u64() >> 63

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection sampling (unbiased)."""
        if n <= 0:
            raise ValueError("randrange needs a positive bound")
        limit = _MASK64 - (_MASK64 + 1) % n
        while True:
            u = self.next_u64()
            if u <= limit:
                return u % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]
