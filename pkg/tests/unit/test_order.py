from __future__ import annotations

from itertools import chain, combinations

import pytest

from qualtime_tools.errors import CycleError, InvalidInstanceError, UnknownElement
from qualtime_tools.oracle import enumerate_partial_orders
from qualtime_tools.order import (
    AtomicScenario,
    PartialOrder,
    POTInstance,
    induced_relation,
    make_partial_order,
    quotient,
    restrict_order,
    satisfies_pot,
    scenario_from,
    scenario_realizable,
    sub_instance,
)
from qualtime_tools.types import Rel4


def test_closure_is_reflexive_and_transitive(chain3: PartialOrder) -> None:
    assert chain3.le("a", "a")
    assert chain3.le("a", "c")
    assert not chain3.le("c", "a")
    assert chain3.lt("a", "b")
    assert not chain3.lt("b", "b")
    assert len(chain3.le_pairs) == 6


def test_cover_pairs_drop_transitive_pairs(chain3: PartialOrder) -> None:
    assert chain3.cover_pairs() == [("a", "b"), ("b", "c")]


def test_cycle_is_rejected() -> None:
    with pytest.raises(CycleError) as exc_info:
        make_partial_order([0, 1, 2], [(0, 1), (1, 2), (2, 0)])
    assert set(exc_info.value.cycle) == {0, 1, 2}


def test_unknown_element_in_pairs() -> None:
    with pytest.raises(UnknownElement):
        make_partial_order([0, 1], [(0, 5)])


def test_unknown_element_lookup(chain3: PartialOrder) -> None:
    with pytest.raises(UnknownElement):
        chain3.le("a", "z")
    with pytest.raises(UnknownElement):
        induced_relation(chain3, "z", "a")


def test_induced_relation(chain3: PartialOrder, antichain3: PartialOrder) -> None:
    assert induced_relation(chain3, "a", "c") is Rel4.LT
    assert induced_relation(chain3, "c", "a") is Rel4.GT
    assert induced_relation(chain3, "b", "b") is Rel4.EQ
    assert induced_relation(antichain3, "a", "b") is Rel4.INC


def test_induced_relation_converse(chain3: PartialOrder) -> None:
    for a in chain3.elements:
        for b in chain3.elements:
            assert chain3.relation(b, a) is chain3.relation(a, b).converse


def test_restrict_order_keeps_transitive_pairs(chain3: PartialOrder) -> None:
    sub = restrict_order(chain3, ["c", "a"])
    assert sub.elements == ("a", "c")
    assert sub.lt("a", "c")
    with pytest.raises(UnknownElement):
        restrict_order(chain3, ["a", "z"])


def test_restrict_order_gives_partial_orders() -> None:
    for order in enumerate_partial_orders(4):
        for subset in chain.from_iterable(combinations(order.elements, r) for r in range(5)):
            sub = restrict_order(order, subset)
            assert sub.elements == subset
            for a in subset:
                assert sub.le(a, a)
                for b in subset:
                    assert sub.le(a, b) == order.le(a, b)
                    if a != b and sub.le(a, b):
                        assert not sub.le(b, a)
                    for c in subset:
                        if sub.le(a, b) and sub.le(b, c):
                            assert sub.le(a, c)


def test_build_reads_reversed_pairs_as_converse() -> None:
    instance = POTInstance.build(3, [(1, 0, {Rel4.LT}), (2, 1, {Rel4.INC, Rel4.GT})])
    assert instance.constraints == {
        (0, 1): frozenset({Rel4.GT}),
        (1, 2): frozenset({Rel4.INC, Rel4.LT}),
    }
    assert instance.allowed(1, 0) == frozenset({Rel4.LT})
    assert instance.allowed(0, 2) == frozenset(Rel4)


def test_build_intersects_repeated_pairs() -> None:
    instance = POTInstance.build(2, [(0, 1, {Rel4.LT, Rel4.EQ}), (1, 0, {Rel4.GT})])
    assert instance.constraints == {(0, 1): frozenset({Rel4.LT})}
    empty = POTInstance.build(2, [(0, 1, {Rel4.LT}), (0, 1, {Rel4.EQ})])
    assert empty.has_empty_constraint


@pytest.mark.parametrize(
    "n, constraints",
    [
        (-1, {}),
        (2, {(1, 0): frozenset({Rel4.LT})}),
        (2, {(0, 2): frozenset({Rel4.LT})}),
        (2, {(0, 0): frozenset({Rel4.EQ})}),
    ],
)
def test_invalid_instances(n: int, constraints: dict) -> None:
    with pytest.raises(InvalidInstanceError):
        POTInstance(n, constraints)


def test_scenario_lookup_and_encoding() -> None:
    scenario = AtomicScenario.from_mapping(
        3, {(0, 1): Rel4.LT, (2, 0): Rel4.LT, (1, 2): Rel4.INC}
    )
    assert scenario.relations == (Rel4.LT, Rel4.GT, Rel4.INC)
    assert scenario.relation(1, 0) is Rel4.GT
    assert scenario.relation(2, 2) is Rel4.EQ
    # lt=0, gt=1, inc=3 packed two bits per pair
    assert scenario.encode() == 0 | (1 << 2) | (3 << 4)
    assert AtomicScenario.decode(3, scenario.encode()) == scenario


def test_scenario_needs_every_pair() -> None:
    with pytest.raises(InvalidInstanceError):
        AtomicScenario(3, (Rel4.LT,))
    with pytest.raises(InvalidInstanceError):
        AtomicScenario.from_mapping(3, {(0, 1): Rel4.LT})


@pytest.mark.parametrize(
    "relations, expected",
    [
        ((Rel4.EQ, Rel4.LT, Rel4.LT), True),
        ((Rel4.LT, Rel4.LT, Rel4.LT), True),
        ((Rel4.INC, Rel4.INC, Rel4.INC), True),
        ((Rel4.EQ, Rel4.LT, Rel4.GT), False),
        ((Rel4.EQ, Rel4.EQ, Rel4.INC), False),
        ((Rel4.LT, Rel4.INC, Rel4.LT), False),
        ((Rel4.LT, Rel4.GT, Rel4.LT), False),
    ],
)
def test_scenario_realizable(relations: tuple, expected: bool) -> None:
    assert scenario_realizable(AtomicScenario(3, relations)) is expected


def test_quotient_merges_equal_variables() -> None:
    scenario = AtomicScenario(3, (Rel4.EQ, Rel4.LT, Rel4.LT))
    order, mapping = quotient(scenario)
    assert order.elements == (0, 2)
    assert mapping == (0, 0, 2)
    assert order.lt(0, 2)
    assert scenario_from(order, mapping) == scenario


def test_quotient_rejects_unrealizable_scenario() -> None:
    with pytest.raises(InvalidInstanceError):
        quotient(AtomicScenario(3, (Rel4.LT, Rel4.INC, Rel4.LT)))


def test_scenario_from_non_injective_map(chain3: PartialOrder) -> None:
    scenario = scenario_from(chain3, ["b", "a", "b"])
    assert scenario.relations == (Rel4.GT, Rel4.EQ, Rel4.LT)


def test_satisfies_pot() -> None:
    instance = POTInstance(3, {(0, 1): frozenset({Rel4.LT, Rel4.EQ})})
    assert satisfies_pot(AtomicScenario(3, (Rel4.EQ, Rel4.INC, Rel4.INC)), instance)
    assert not satisfies_pot(AtomicScenario(3, (Rel4.GT, Rel4.INC, Rel4.INC)), instance)
    with pytest.raises(InvalidInstanceError):
        satisfies_pot(AtomicScenario(2, (Rel4.LT,)), instance)


def test_sub_instance_reindexes() -> None:
    instance = POTInstance(
        4, {(0, 2): frozenset({Rel4.LT}), (1, 3): frozenset({Rel4.INC})}
    )
    sub = sub_instance(instance, [2, 0])
    assert sub == POTInstance(2, {(0, 1): frozenset({Rel4.LT})})
    assert sub_instance(instance, range(4)) == instance
    assert sub_instance(instance, []) == POTInstance(0)
    with pytest.raises(UnknownElement):
        sub_instance(instance, [4])
