"""Deterministic 64-bit RNG used wherever reproducibility is contractual.

The generator is splitmix64: every draw is a pure function of the 64-bit
state, all arithmetic is modulo 2**64, and identical seeds yield identical
streams on every platform. Integer draws below a bound use the multiply-high
method instead of modulo so the mapping is the same everywhere.
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """splitmix64 stream over a 64-bit state."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        """Uniform integer in [0, k) via multiply-high."""
        if k <= 0:
            raise ValueError(f"bound must be positive, got {k}")
        return (self.next_u64() * k) >> 64

    def unit(self) -> float:
        """Uniform float in [0, 1) with 53 bits of resolution."""
        return (self.next_u64() >> 11) * 2.0 ** -53
