"""xoshiro256** seeded through SplitMix64.

Pinned by algorithm rather than by library so that other implementations
can reproduce scenario samples and generated instances bit for bit.
Integer seeds fill the state with four SplitMix64 outputs, the same
convention as ``seed_from_u64`` in the reference Rust crate.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


class Xoshiro256:
    """xoshiro256** generator."""

    def __init__(self, seed: int = 0, state: tuple[int, int, int, int] | None = None):
        if state is None:
            sm = SplitMix64(seed)
            state = tuple(sm.next_u64() for _ in range(4))
        if len(state) != 4 or not any(state):
            raise ValueError("state must be four 64-bit words, not all zero")
        self.s = [w & MASK64 for w in state]

    def next_u64(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]`` by rejection on 64-bit draws."""
        if lo > hi:
            raise ValueError(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        if span > 1 << 64:
            raise ValueError("range wider than 2^64")
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            v = self.next_u64()
            if v < limit:
                return lo + v % span

    def random(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def bernoulli(self, p: float) -> bool:
        return self.random() < p

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.integer(0, i)
            items[i], items[j] = items[j], items[i]
