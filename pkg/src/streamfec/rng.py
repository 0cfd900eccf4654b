"""Deterministic 64-bit PRNG (SplitMix64) for reproducible simulations.

SplitMix64 is the fixed, documented generator used everywhere randomness
is needed: channel transitions, message symbols and the randomized search
in code construction.  The same (seed, stream) pair produces the same
sequence on every platform, which is what makes sweep CSVs and code-spec
files byte-identical across runs.

Per-worker streams are derived with ``derive_stream(seed, stream_id)``:
one extra SplitMix64 scramble of ``seed + (stream_id + 1) * GOLDEN``.
Distinct stream ids give statistically independent sequences.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    """The SplitMix64 output scrambler."""
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


def derive_stream(seed: int, stream_id: int) -> int:
    """Seed for an independent sub-stream of a base seed."""
    return _mix((seed + (stream_id + 1) * GOLDEN) & _MASK64)


class SplitMix64:
    """SplitMix64 generator; state advances by the golden-ratio constant."""

    __slots__ = ("_state", "_bitbuf", "_bitcount")

    def __init__(self, seed: int):
        self._state = seed & _MASK64
        self._bitbuf = 0
        self._bitcount = 0

    def next64(self) -> int:
        self._state = (self._state + GOLDEN) & _MASK64
        return _mix(self._state)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next64() >> 11) * (2.0 ** -53)

    def randbits(self, k: int) -> int:
        """k random bits (k <= 64), buffered so small draws are cheap."""
        if self._bitcount < k:
            self._bitbuf = self.next64()
            self._bitcount = 64
        out = self._bitbuf & ((1 << k) - 1)
        self._bitbuf >>= k
        self._bitcount -= k
        return out

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection on the next power of two."""
        bits = (n - 1).bit_length()
        if n & (n - 1) == 0:
            return self.randbits(bits) if n > 1 else 0
        while True:
            v = self.randbits(bits)
            if v < n:
                return v
