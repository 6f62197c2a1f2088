"""Partial orders, atomic scenarios and Partially Ordered Time instances.

A Partially Ordered Time (POT) instance asks for a partial order `P` and a map
`f` from variables to elements of `P` such that every constrained pair of
variables is mapped to elements whose induced relation belongs to the
constraint. Solutions are represented canonically as atomic scenarios: one
relation of `Rel4` per pair of variables. The pair `(P, f)` is recovered with
`quotient`.
"""
from __future__ import annotations

import typing as t
from dataclasses import dataclass, field
from itertools import product

import networkx as nx

from .errors import CycleError, InvalidInstanceError, UnknownElement
from .types import REL4, Rel4, oriented
from .utils import pair_count, pair_index, pairs

Element = t.Hashable

ALL_REL4: t.FrozenSet[Rel4] = frozenset(REL4)


@dataclass(frozen=True)
class PartialOrder:
    """A finite partial order.

    `le_pairs` holds every pair `(a, b)` with `a <= b`, reflexive pairs included.
    Use `make_partial_order` to build an order from arbitrary generating pairs.
    """

    elements: t.Tuple[Element, ...]
    le_pairs: t.FrozenSet[t.Tuple[Element, Element]]
    _index: t.Dict[Element, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_index", {element: i for i, element in enumerate(self.elements)}
        )

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, element: object) -> bool:
        return element in self._index

    def position(self, element: Element) -> int:
        """Position of `element` in `elements`."""
        try:
            return self._index[element]
        except KeyError:
            raise UnknownElement(f"Element {element!r} does not belong to the order")

    def le(self, a: Element, b: Element) -> bool:
        self.position(a)
        self.position(b)
        return (a, b) in self.le_pairs

    def lt(self, a: Element, b: Element) -> bool:
        return a != b and self.le(a, b)

    def relation(self, a: Element, b: Element) -> Rel4:
        return induced_relation(self, a, b)

    def cover_pairs(self) -> t.List[t.Tuple[Element, Element]]:
        """Strict pairs `(a, b)` with no element strictly between them."""
        strict = [(a, b) for a, b in self.le_pairs if a != b]
        result = []
        for a, b in strict:
            if not any(
                (a, c) in self.le_pairs and (c, b) in self.le_pairs
                for c in self.elements
                if c != a and c != b
            ):
                result.append((a, b))
        return sorted(result, key=lambda pair: (self._index[pair[0]], self._index[pair[1]]))


def make_partial_order(
    elements: t.Iterable[Element], le_pairs: t.Iterable[t.Tuple[Element, Element]] = ()
) -> PartialOrder:
    """Build the partial order generated by `le_pairs` over `elements`.

    The reflexive-transitive closure of the generating pairs is computed.

    Raises:
        UnknownElement: When a pair mentions an element outside `elements`.
        CycleError: When the closure relates two distinct elements both ways.
    """
    ground: t.Tuple[Element, ...] = tuple(dict.fromkeys(elements))
    graph = nx.DiGraph()
    graph.add_nodes_from(ground)
    known = set(ground)
    for a, b in le_pairs:
        if a not in known or b not in known:
            raise UnknownElement(f"Pair ({a!r}, {b!r}) mentions an unknown element")
        if a != b:
            graph.add_edge(a, b)
    if not nx.is_directed_acyclic_graph(graph):
        cycle = [edge[0] for edge in nx.find_cycle(graph)]
        raise CycleError(
            f"Closure is not antisymmetric, cycle through {cycle!r}", cycle=cycle
        )
    closure = nx.transitive_closure_dag(graph)
    closed = {(element, element) for element in ground}
    closed.update(closure.edges())
    return PartialOrder(ground, frozenset(closed))


def induced_relation(order: PartialOrder, a: Element, b: Element) -> Rel4:
    """Relation induced by `order` between `a` and `b`.

    Raises:
        UnknownElement: When `a` or `b` does not belong to the order.
    """
    a_le_b = order.le(a, b)
    b_le_a = order.le(b, a)
    if a_le_b and b_le_a:
        return Rel4.EQ
    if a_le_b:
        return Rel4.LT
    if b_le_a:
        return Rel4.GT
    return Rel4.INC


def restrict_order(order: PartialOrder, subset: t.Iterable[Element]) -> PartialOrder:
    """Sub-order induced by `subset`, elements kept in their original order."""
    keep = set(subset)
    for element in keep:
        order.position(element)
    elements = tuple(element for element in order.elements if element in keep)
    le_pairs = frozenset(
        (a, b) for a, b in order.le_pairs if a in keep and b in keep
    )
    return PartialOrder(elements, le_pairs)


@dataclass(frozen=True)
class POTInstance:
    """A Partially Ordered Time instance over variables `0..n-1`.

    Constraints are stored for ordered pairs `(i, j)` with `i < j`. Pairs without
    a constraint accept every relation. An empty relation set is allowed and makes
    the instance unsatisfiable.
    """

    n: int
    constraints: t.Mapping[t.Tuple[int, int], t.FrozenSet[Rel4]] = field(
        default_factory=dict
    )

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidInstanceError(f"Variable count must be non-negative, got {self.n}")
        for (i, j), relations in self.constraints.items():
            if not 0 <= i < j < self.n:
                raise InvalidInstanceError(
                    f"Constraint on ({i}, {j}) must satisfy 0 <= i < j < {self.n}"
                )
            if not relations <= ALL_REL4:
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
        constraints: t.Iterable[t.Tuple[int, int, t.Iterable[Rel4]]] = (),
    ) -> POTInstance:
        """Build an instance from `(i, j, relations)` triples in any orientation.

        Repeated pairs intersect their relation sets.
        """
        merged: t.Dict[t.Tuple[int, int], t.FrozenSet[Rel4]] = {}
        for i, j, relations in constraints:
            if i == j:
                raise InvalidInstanceError(f"Constraint on ({i}, {j}) relates a variable to itself")
            a, b, stored = oriented(i, j, set(relations), lambda rel: rel.converse)
            merged[(a, b)] = merged[(a, b)] & stored if (a, b) in merged else stored
        return cls(n, merged)

    def allowed(self, i: int, j: int) -> t.FrozenSet[Rel4]:
        """Relations accepted between variables `i` and `j`, oriented from `i` to `j`."""
        if i == j:
            return frozenset({Rel4.EQ})
        if i < j:
            return self.constraints.get((i, j), ALL_REL4)
        return frozenset(rel.converse for rel in self.constraints.get((j, i), ALL_REL4))

    @property
    def has_empty_constraint(self) -> bool:
        return any(not relations for relations in self.constraints.values())


@dataclass(frozen=True)
class AtomicScenario:
    """One relation of `Rel4` for every pair of variables.

    `relations` is indexed by the lexicographic position of the pair `(i, j)`,
    `i < j`; converses are derived on lookup.
    """

    n: int
    relations: t.Tuple[Rel4, ...]

    def __post_init__(self) -> None:
        if len(self.relations) != pair_count(self.n):
            raise InvalidInstanceError(
                f"A scenario over {self.n} variables needs {pair_count(self.n)} relations"
            )

    @classmethod
    def from_mapping(
        cls, n: int, relations: t.Mapping[t.Tuple[int, int], Rel4]
    ) -> AtomicScenario:
        values = []
        for i, j in pairs(n):
            if (i, j) in relations:
                values.append(relations[(i, j)])
            elif (j, i) in relations:
                values.append(relations[(j, i)].converse)
            else:
                raise InvalidInstanceError(f"Missing relation for pair ({i}, {j})")
        return cls(n, tuple(values))

    def relation(self, i: int, j: int) -> Rel4:
        if i == j:
            return Rel4.EQ
        if i < j:
            return self.relations[pair_index(i, j, self.n)]
        return self.relations[pair_index(j, i, self.n)].converse

    def encode(self) -> int:
        """Pack the scenario into an integer, two bits per pair."""
        code = 0
        for index, rel in enumerate(self.relations):
            code |= rel.code << (2 * index)
        return code

    @classmethod
    def decode(cls, n: int, code: int) -> AtomicScenario:
        return cls(n, tuple(REL4[(code >> (2 * index)) & 3] for index in range(pair_count(n))))

    def items(self) -> t.Iterator[t.Tuple[int, int, Rel4]]:
        for (i, j), rel in zip(pairs(self.n), self.relations):
            yield i, j, rel


def scenario_realizable(scenario: AtomicScenario) -> bool:
    """Whether some partial order and variable map induce exactly `scenario`.

    This holds when `EQ` is an equivalence, every relation is congruent under
    `EQ`, and `LT` is transitive on the equivalence classes.
    """
    n = scenario.n
    rel = scenario.relation
    for a, b, c in product(range(n), repeat=3):
        if a == b or b == c or a == c:
            continue
        ab = rel(a, b)
        if ab is Rel4.EQ and rel(a, c) is not rel(b, c):
            return False
        if ab is Rel4.LT and rel(b, c) is Rel4.LT and rel(a, c) is not Rel4.LT:
            return False
    return True


def satisfies_pot(scenario: AtomicScenario, instance: POTInstance) -> bool:
    if scenario.n != instance.n:
        raise InvalidInstanceError(
            f"Scenario over {scenario.n} variables cannot satisfy an instance over {instance.n}"
        )
    return all(
        scenario.relation(i, j) in relations
        for (i, j), relations in instance.constraints.items()
    )


def quotient(scenario: AtomicScenario) -> t.Tuple[PartialOrder, t.Tuple[int, ...]]:
    """Partial order realizing `scenario`, and the element each variable maps to.

    Elements are the smallest variable of each `EQ` class.

    Raises:
        InvalidInstanceError: When the scenario is not realizable.
    """
    if not scenario_realizable(scenario):
        raise InvalidInstanceError("Scenario is not realizable by any partial order")
    representative = list(range(scenario.n))
    for i, j, rel in scenario.items():
        if rel is Rel4.EQ:
            representative[j] = min(representative[j], representative[i])
    le_pairs = []
    for i, j, rel in scenario.items():
        if rel is Rel4.LT:
            le_pairs.append((representative[i], representative[j]))
        elif rel is Rel4.GT:
            le_pairs.append((representative[j], representative[i]))
    order = make_partial_order(sorted(set(representative)), le_pairs)
    return order, tuple(representative)


def scenario_from(order: PartialOrder, mapping: t.Sequence[Element]) -> AtomicScenario:
    """Atomic scenario induced by mapping variable `i` to element `mapping[i]`."""
    n = len(mapping)
    return AtomicScenario(
        n, tuple(induced_relation(order, mapping[i], mapping[j]) for i, j in pairs(n))
    )


def sub_instance(instance: POTInstance, variables: t.Iterable[int]) -> POTInstance:
    """Instance restricted to `variables`, re-indexed in ascending original order."""
    kept = sorted(set(variables))
    for variable in kept:
        if not 0 <= variable < instance.n:
            raise UnknownElement(f"Variable {variable} does not belong to the instance")
    index = {variable: position for position, variable in enumerate(kept)}
    return POTInstance(
        len(kept),
        {
            (index[i], index[j]): relations
            for (i, j), relations in instance.constraints.items()
            if i in index and j in index
        },
    )
