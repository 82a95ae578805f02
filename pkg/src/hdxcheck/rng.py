"""Counter-based seeded randomness (SplitMix64 in counter mode).

Any reimplementation must reproduce the stream exactly: output t of seed s is

    z = (s + (t + 1) * 0x9E3779B97F4A7C15) mod 2^64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2^64
    out = z ^ (z >> 31)

Counters never repeat within one generator, so draws are order-independent
given the counter, and identical seeds give identical fixture streams.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(seed: int, counter: int) -> int:
    """The t-th 64-bit output of the seeded counter stream."""
    z = (seed + (counter + 1) * _GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class CounterRng:
    """Thin stateful wrapper advancing a SplitMix64 counter stream."""

    def __init__(self, seed: int):
        self.seed = seed & _MASK64
        self._counter = 0

    def next_word(self) -> int:
        word = splitmix64(self.seed, self._counter)
        self._counter += 1
        return word

    def mask(self, nbits: int) -> int:
        """Uniform bitmask with nbits independent fair bits."""
        out = 0
        shift = 0
        while shift < nbits:
            out |= self.next_word() << shift
            shift += 64
        return out & ((1 << nbits) - 1)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        span = (_MASK64 + 1) - ((_MASK64 + 1) % bound)
        while True:
            w = self.next_word()
            if w < span:
                return w % bound
