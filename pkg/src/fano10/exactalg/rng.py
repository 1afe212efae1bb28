"""Seeded 64-bit splittable generator.

State update (SplitMix64)::

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
    output z ^ (z >> 31)

``split(tag)`` derives an independent child stream whose seed is the mix of
the parent's next output with ``tag``; parents are advanced by one step.
``below(n)`` draws uniformly from ``[0, n)`` by rejection on the top of the
64-bit range, so a given seed yields the same integers on every platform.
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int = 0) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return _mix(self.state)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("upper bound must be positive")
        if n > MASK64:
            # big ranges (extension-field orders): concatenate 64-bit words
            words = (n.bit_length() + 63) // 64
            limit = (1 << (64 * words)) // n * n
            while True:
                r = 0
                for _ in range(words):
                    r = (r << 64) | self.next_u64()
                if r < limit:
                    return r % n
        limit = (1 << 64) // n * n
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def split(self, tag: int = 0) -> "SplitMix64":
        return SplitMix64(_mix(self.next_u64() ^ _mix((tag + GOLDEN) & MASK64)))

    def choice(self, seq):
        return seq[self.below(len(seq))]


def derive_seed(seed: int, *tags: int) -> int:
    """Deterministic child seed for ``(seed, tag1, tag2, ...)``."""
    s = seed & MASK64
    for t in tags:
        s = _mix((s ^ _mix((t + GOLDEN) & MASK64)) & MASK64)
    return s
