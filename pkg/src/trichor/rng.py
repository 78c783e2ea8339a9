"""Deterministic pseudo-random numbers for reproducible test corpora.

SplitMix64 (Steele, Lea, Flood 2014): a 64-bit state is advanced by the
golden-ratio increment and scrambled by two xor-multiply rounds.  The
sequence depends only on the seed, never on OS entropy, so generated
point sets are bit-identical across runs and platforms.
"""

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) via rejection on masked draws."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        mask = (1 << bound.bit_length()) - 1
        while True:
            v = self.next_u64() & mask
            if v < bound:
                return v
