"""Brute-force reference procedures.

Oracles only depend on the data model (`order`, `width`, `interval`) and never on
the solvers, so that they can be used to validate them. They do not prune and
are protected by the caps of `qualtime_tools.defaults.Limits`.
"""
from __future__ import annotations

import logging
import typing as t
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import comb

from .defaults import DEFAULT_LIMITS, DEFAULT_OVERLAP_BOUND, Limits, OverlapBound
from .errors import SizeLimitExceeded
from .interval import IAInstance, OrderedPartition, basic_relation_of, overlap_counts
from .order import (
    AtomicScenario,
    PartialOrder,
    POTInstance,
    make_partial_order,
    quotient,
    satisfies_pot,
    scenario_realizable,
)
from .types import REL4, Endpoint
from .utils import pair_count
from .width import effective_width_at_most

logger = logging.getLogger(__name__)


@dataclass
class OracleReport:
    """Outcome of an exhaustive search. `decision` holds exactly when `count` is positive."""

    decision: bool
    count: int
    witnesses: t.List[t.Any] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.decision != (self.count > 0):
            raise ValueError("An oracle report decides SAT exactly when its count is positive")


def enumerate_scenarios(n: int, limits: Limits | None = None) -> t.Iterator[AtomicScenario]:
    """Yield every assignment of a relation to each pair of `n` variables, lexicographically.

    Raises:
        SizeLimitExceeded: When `n` is above `limits.scenario_variables`.
    """
    cap = (limits or DEFAULT_LIMITS).scenario_variables
    if n > cap:
        raise SizeLimitExceeded(f"Scenario enumeration is capped at {cap} variables, got {n}")
    for relations in product(REL4, repeat=pair_count(n)):
        yield AtomicScenario(n, relations)


@lru_cache(maxsize=None)
def _realizable(scenario: AtomicScenario) -> bool:
    return scenario_realizable(scenario)


@lru_cache(maxsize=None)
def _width_of_quotient_at_most(scenario: AtomicScenario, k: int) -> bool:
    order, _ = quotient(scenario)
    return effective_width_at_most(order, k)


def pot_oracle(instance: POTInstance, k: int, limits: Limits | None = None) -> OracleReport:
    """Count realizable scenarios satisfying `instance` whose order has effective width `k`."""
    limits = limits or DEFAULT_LIMITS
    count = 0
    witnesses: t.List[AtomicScenario] = []
    for scenario in enumerate_scenarios(instance.n, limits):
        if not satisfies_pot(scenario, instance) or not _realizable(scenario):
            continue
        if not _width_of_quotient_at_most(scenario, k):
            continue
        count += 1
        if len(witnesses) < limits.witnesses:
            witnesses.append(scenario)
    logger.debug("Scenario oracle over %d variables at k=%d found %d", instance.n, k, count)
    return OracleReport(count > 0, count, witnesses)


def enumerate_ordered_partitions(
    m: int, limits: Limits | None = None
) -> t.Iterator[t.Tuple[t.FrozenSet[int], ...]]:
    """Yield every ordered partition of the points `0..m-1` into nonempty cells.

    Raises:
        SizeLimitExceeded: When `m` is above `limits.partition_points`.
    """
    cap = (limits or DEFAULT_LIMITS).partition_points
    if m > cap:
        raise SizeLimitExceeded(f"Ordered partition enumeration is capped at {cap} points, got {m}")
    yield from _ordered_partitions(tuple(range(m)))


def _ordered_partitions(points: t.Tuple[int, ...]) -> t.Iterator[t.Tuple[t.FrozenSet[int], ...]]:
    if not points:
        yield ()
        return
    for size in range(1, len(points) + 1):
        for first in combinations(points, size):
            rest = tuple(point for point in points if point not in first)
            for tail in _ordered_partitions(rest):
                yield (frozenset(first),) + tail


@lru_cache(maxsize=None)
def obn(m: int) -> int:
    """Ordered Bell number: the number of ordered partitions of an `m`-set."""
    if m < 0:
        raise ValueError(f"obn() expects a non-negative integer, got {m}")
    if m == 0:
        return 1
    return sum(comb(m, i) * obn(m - i) for i in range(1, m + 1))


@lru_cache(maxsize=None)
def _interval_layouts(n: int) -> t.Tuple[OrderedPartition, ...]:
    """All ordered partitions of the endpoints of `n` intervals with starts before ends."""
    points = [Endpoint(i, is_end) for i in range(n) for is_end in (False, True)]
    layouts = []
    for cells in _ordered_partitions(tuple(range(len(points)))):
        partition = OrderedPartition.from_cells([points[p] for p in cell] for cell in cells)
        if partition.is_layout_of(n):
            layouts.append(partition)
    return tuple(layouts)


def ia_oracle(
    instance: IAInstance,
    k: int,
    limits: Limits | None = None,
    bound: OverlapBound = DEFAULT_OVERLAP_BOUND,
) -> OracleReport:
    """Count endpoint orders satisfying `instance` with every overlap count bounded by `k`."""
    limits = limits or DEFAULT_LIMITS
    if 2 * instance.n > limits.partition_points:
        raise SizeLimitExceeded(
            f"Ordered partition enumeration is capped at {limits.partition_points} points, "
            f"got {2 * instance.n}"
        )
    capacity = k - 1 if bound is OverlapBound.FEWER_THAN_K else k
    count = 0
    witnesses: t.List[OrderedPartition] = []
    for layout in _interval_layouts(instance.n):
        if not all(
            basic_relation_of(layout, i, j) in relations
            for (i, j), relations in instance.constraints.items()
        ):
            continue
        if any(overlapped > capacity for overlapped in overlap_counts(layout, instance.n)):
            continue
        count += 1
        if len(witnesses) < limits.witnesses:
            witnesses.append(layout)
    logger.debug("Layout oracle over %d intervals at k=%d found %d", instance.n, k, count)
    return OracleReport(count > 0, count, witnesses)


def enumerate_partial_orders(m: int, limits: Limits | None = None) -> t.Iterator[PartialOrder]:
    """Yield every partial order on the labeled elements `0..m-1`.

    Orders are grown one element at a time: the new element receives a down-set
    and an up-set of the previous order that keep the relation transitive.

    Raises:
        SizeLimitExceeded: When `m` is above `limits.width_elements`.
    """
    cap = (limits or DEFAULT_LIMITS).width_elements
    if m > cap:
        raise SizeLimitExceeded(f"Partial order enumeration is capped at {cap} elements, got {m}")
    for strict in _strict_orders(m):
        yield make_partial_order(range(m), strict)


def _strict_orders(m: int) -> t.Iterator[t.FrozenSet[t.Tuple[int, int]]]:
    if m == 0:
        yield frozenset()
        return
    new = m - 1
    previous = list(range(new))
    for strict in _strict_orders(new):
        for down_size in range(len(previous) + 1):
            for down in combinations(previous, down_size):
                if any((a, b) in strict and a not in down for a in previous for b in down):
                    continue
                candidates = [x for x in previous if x not in down]
                for up_size in range(len(candidates) + 1):
                    for up in combinations(candidates, up_size):
                        if any((a, b) in strict and b not in up for a in up for b in previous):
                            continue
                        if any((d, u) not in strict for d in down for u in up):
                            continue
                        yield strict | {(d, new) for d in down} | {(new, u) for u in up}
