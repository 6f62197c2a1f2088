"""Deterministic 64-bit pseudo random generator used by instance generators.

The generator is SplitMix64: the state advances by `0x9E3779B97F4A7C15` and each
output is mixed with the multipliers `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`
and the shifts 30, 27 and 31. It is fully specified by these constants so that
generated corpora are reproducible on any platform and in any language.
"""
from __future__ import annotations

import typing as t

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

T = t.TypeVar("T")


def mix64(value: int) -> int:
    value &= MASK64
    value = ((value ^ (value >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    value = ((value ^ (value >> 27)) * 0x94D049BB133111EB) & MASK64
    return value ^ (value >> 31)


def derive_seed(*parts: t.Union[int, str]) -> int:
    """Combine integers and strings into a single 64-bit seed."""
    state = 0
    for part in parts:
        if isinstance(part, str):
            for byte in part.encode("utf-8"):
                state = mix64(state + GOLDEN_GAMMA + byte)
        else:
            state = mix64(state + GOLDEN_GAMMA + (part & MASK64))
    return state


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def randbelow(self, n: int) -> int:
        """Uniform integer in `[0, n)`, drawn by rejection to avoid modulo bias."""
        if n <= 0:
            raise ValueError(f"Upper bound must be positive, got {n}")
        limit = ((1 << 64) // n) * n
        while True:
            value = self.next_u64()
            if value < limit:
                return value % n

    def randint(self, low: int, high: int) -> int:
        """Uniform integer in `[low, high]`."""
        return low + self.randbelow(high - low + 1)

    def random(self) -> float:
        """Uniform float in `[0, 1)` with 53 bits of precision."""
        return (self.next_u64() >> 11) * 2.0**-53

    def chance(self, probability: float) -> bool:
        return self.random() < probability

    def choice(self, items: t.Sequence[T]) -> T:
        if not items:
            raise IndexError("Cannot choose from an empty sequence")
        return items[self.randbelow(len(items))]

    def shuffle(self, items: t.MutableSequence[T]) -> None:
        """Fisher-Yates shuffle, in place."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, items: t.Sequence[T], count: int) -> t.List[T]:
        pool = list(items)
        if count > len(pool):
            raise ValueError(f"Cannot sample {count} items out of {len(pool)}")
        self.shuffle(pool)
        return pool[:count]
