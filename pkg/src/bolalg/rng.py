"""Deterministic 64-bit PRNG (splitmix64) for reproducible sampling runs."""

from __future__ import annotations

from fractions import Fraction

_MASK = (1 << 64) - 1


class SplitMix64:
    """splitmix64: x += 0x9E3779B97F4A7C15; mix with two xor-shift-multiplies.

    Chosen over random.Random for a documented, platform-stable 64-bit
    stream; every CLI run with a fixed seed is byte-reproducible.
    """

    def __init__(self, seed: int):
        self._x = seed & _MASK

    def next_u64(self) -> int:
        self._x = (self._x + 0x9E3779B97F4A7C15) & _MASK
        z = self._x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        # 53-bit mantissa fill
        u = self.next_u64() >> 11
        return lo + (hi - lo) * (u / float(1 << 53))

    def rational(self, max_num: int = 9, max_den: int = 5) -> Fraction:
        """Small exact rational in [-max_num, max_num] with denominator <= max_den."""
        num = self.next_u64() % (2 * max_num + 1) - max_num
        den = self.next_u64() % max_den + 1
        return Fraction(num, den)

    def choice(self, seq):
        return seq[self.next_u64() % len(seq)]
