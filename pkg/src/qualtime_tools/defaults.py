from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class OverlapBound(str, Enum):
    """How the overlap parameter `k` bounds the number of overlapping intervals."""

    FEWER_THAN_K = "fewer-than-k"
    """No interval overlaps with `k` or more other intervals (default)."""

    AT_MOST_K = "at-most-k"
    """No interval overlaps with more than `k` other intervals."""


@dataclass(frozen=True)
class Limits:
    """Caps protecting exhaustive procedures (checkers and oracles)."""

    width_elements: int = 8
    """Largest partial order accepted by the exhaustive effective-width checker."""

    scenario_variables: int = 5
    """Largest variable count for atomic-scenario enumeration."""

    partition_points: int = 8
    """Largest number of points for ordered-partition enumeration."""

    csp_assignments: int = 1_000_000
    """Largest number of assignments enumerated by the finite-domain oracle."""

    witnesses: int = 100
    """Witness lists of oracle reports are truncated to this many items."""


DEFAULT_LIMITS = Limits()
DEFAULT_OVERLAP_BOUND = OverlapBound.FEWER_THAN_K
DEFAULT_BENCH_JOBS = 1
DEFAULT_CONSTRAINT_DENSITY = 0.6
"""Probability that a generated instance constrains a given pair."""
DEFAULT_EXTRA_RELATION_RATE = 0.2
"""Probability that a generated constraint admits a relation besides the planted one."""


__all__ = [
    "Limits",
    "OverlapBound",
    "DEFAULT_LIMITS",
    "DEFAULT_OVERLAP_BOUND",
    "DEFAULT_BENCH_JOBS",
    "DEFAULT_CONSTRAINT_DENSITY",
    "DEFAULT_EXTRA_RELATION_RATE",
]
