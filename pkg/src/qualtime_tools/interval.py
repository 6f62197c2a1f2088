"""Interval algebra instances and ordered partitions of interval endpoints.

An interval `x` is a pair of endpoints `x-` < `x+`. A solution of an instance is
an ordered partition of all endpoints into cells: endpoints in the same cell are
equal, endpoints of earlier cells are smaller. The basic relation between two
intervals is then read from the cell ranks of their four endpoints.
"""
from __future__ import annotations

import typing as t
from dataclasses import dataclass, field

from .errors import InvalidInstanceError, UnknownElement
from .types import BASIC_RELATIONS, BasicRel, Endpoint, oriented

ALL_BASIC: t.FrozenSet[BasicRel] = frozenset(BASIC_RELATIONS)


@dataclass(frozen=True)
class IAInstance:
    """An interval algebra instance over intervals `0..n-1`.

    Constraints are stored for pairs `(i, j)` with `i < j` and read as
    "interval `i` stands in one of these relations to interval `j`".
    """

    n: int
    constraints: t.Mapping[t.Tuple[int, int], t.FrozenSet[BasicRel]] = field(
        default_factory=dict
    )

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidInstanceError(f"Interval count must be non-negative, got {self.n}")
        for (i, j), relations in self.constraints.items():
            if not 0 <= i < j < self.n:
                raise InvalidInstanceError(
                    f"Constraint on ({i}, {j}) must satisfy 0 <= i < j < {self.n}"
                )
            if not relations <= ALL_BASIC:
                raise InvalidInstanceError(f"Constraint on ({i}, {j}) has unknown relations")
        object.__setattr__(
            self,
            "constraints",
            {key: frozenset(self.constraints[key]) for key in sorted(self.constraints)},
        )

    @classmethod
    def build(
        cls,
        n: int,
        constraints: t.Iterable[t.Tuple[int, int, t.Iterable[BasicRel]]] = (),
    ) -> IAInstance:
        """Build an instance from `(i, j, relations)` triples in any orientation.

        Repeated pairs intersect their relation sets.
        """
        merged: t.Dict[t.Tuple[int, int], t.FrozenSet[BasicRel]] = {}
        for i, j, relations in constraints:
            if i == j:
                raise InvalidInstanceError(f"Constraint on ({i}, {j}) relates an interval to itself")
            a, b, stored = oriented(i, j, set(relations), lambda rel: rel.converse)
            merged[(a, b)] = merged[(a, b)] & stored if (a, b) in merged else stored
        return cls(n, merged)

    def allowed(self, i: int, j: int) -> t.FrozenSet[BasicRel]:
        """Relations accepted from interval `i` to interval `j`."""
        if i == j:
            return frozenset({BasicRel.E})
        if i < j:
            return self.constraints.get((i, j), ALL_BASIC)
        return frozenset(rel.converse for rel in self.constraints.get((j, i), ALL_BASIC))

    @property
    def has_empty_constraint(self) -> bool:
        return any(not relations for relations in self.constraints.values())

    def endpoints(self) -> t.List[Endpoint]:
        return [Endpoint(i, is_end) for i in range(self.n) for is_end in (False, True)]


@dataclass(frozen=True)
class OrderedPartition:
    """A sequence of disjoint nonempty cells of endpoints.

    Ranks are 1-based: every endpoint of `cells[i]` has rank `i + 1`.
    """

    cells: t.Tuple[t.FrozenSet[Endpoint], ...]
    _ranks: t.Dict[Endpoint, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        ranks: t.Dict[Endpoint, int] = {}
        for index, cell in enumerate(self.cells, start=1):
            if not cell:
                raise InvalidInstanceError(f"Cell {index} of an ordered partition is empty")
            for endpoint in cell:
                if endpoint in ranks:
                    raise InvalidInstanceError(f"Endpoint {endpoint} appears in two cells")
                ranks[endpoint] = index
        object.__setattr__(self, "_ranks", ranks)

    @classmethod
    def from_cells(cls, cells: t.Iterable[t.Iterable[Endpoint]]) -> OrderedPartition:
        return cls(tuple(frozenset(cell) for cell in cells))

    def __len__(self) -> int:
        return len(self.cells)

    def rank(self, endpoint: Endpoint) -> int:
        try:
            return self._ranks[endpoint]
        except KeyError:
            raise UnknownElement(f"Endpoint {endpoint} is not ranked by this partition")

    def endpoints(self) -> t.FrozenSet[Endpoint]:
        return frozenset(self._ranks)

    def is_layout_of(self, n: int) -> bool:
        """Whether the cells rank exactly the endpoints of `n` intervals, starts before ends."""
        if set(self._ranks) != {Endpoint(i, e) for i in range(n) for e in (False, True)}:
            return False
        return all(self.rank(Endpoint(i, False)) < self.rank(Endpoint(i, True)) for i in range(n))

    def lines(self) -> t.List[str]:
        """Serialize as `cell <rank> : <endpoints>` lines."""
        return [
            f"cell {index} : " + " ".join(str(endpoint) for endpoint in sorted(cell))
            for index, cell in enumerate(self.cells, start=1)
        ]


def _ranks(partition: OrderedPartition, i: int, j: int) -> t.Tuple[int, int, int, int]:
    return (
        partition.rank(Endpoint(i, False)),
        partition.rank(Endpoint(i, True)),
        partition.rank(Endpoint(j, False)),
        partition.rank(Endpoint(j, True)),
    )


def overlaps(partition: OrderedPartition, i: int, j: int) -> bool:
    """Whether the open interiors of intervals `i` and `j` intersect. Meeting is not overlapping."""
    i_start, i_end, j_start, j_end = _ranks(partition, i, j)
    return max(i_start, j_start) < min(i_end, j_end)


def basic_relation_of(partition: OrderedPartition, i: int, j: int) -> BasicRel:
    """The basic relation from interval `i` to interval `j` under `partition`.

    Raises:
        InvalidInstanceError: When an interval does not start strictly before it ends.
    """
    a1, a2, b1, b2 = _ranks(partition, i, j)
    if not (a1 < a2 and b1 < b2):
        raise InvalidInstanceError(f"Intervals {i} and {j} must start before they end")
    if a2 < b1:
        return BasicRel.P
    if a2 == b1:
        return BasicRel.M
    if b2 < a1:
        return BasicRel.PI
    if b2 == a1:
        return BasicRel.MI
    if a1 == b1:
        if a2 == b2:
            return BasicRel.E
        return BasicRel.S if a2 < b2 else BasicRel.SI
    if a2 == b2:
        return BasicRel.F if a1 > b1 else BasicRel.FI
    if a1 < b1:
        return BasicRel.O if a2 < b2 else BasicRel.DI
    return BasicRel.D if a2 < b2 else BasicRel.OI


def overlap_counts(partition: OrderedPartition, n: int) -> t.List[int]:
    """Number of other intervals each interval overlaps with."""
    return [sum(overlaps(partition, i, j) for j in range(n) if j != i) for i in range(n)]
