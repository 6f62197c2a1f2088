from __future__ import annotations

import typing as t
from functools import reduce
from itertools import product
from operator import or_

import pytest

from qualtime_tools.errors import InvalidInstanceError
from qualtime_tools.oracle import pot_oracle
from qualtime_tools.order import POTInstance, quotient, satisfies_pot, scenario_realizable
from qualtime_tools.pot import WaistCallKey, WaistSolver, bit, pot_count, pot_decide, pot_witness
from qualtime_tools.types import REL4, Rel4
from qualtime_tools.width import effective_width_at_most

LT, GT, EQ, INC = REL4


def pair(*relations: Rel4) -> POTInstance:
    return POTInstance(2, {(0, 1): frozenset(relations)})


def test_bit() -> None:
    assert bit(0b101, 1) == 1
    assert bit(0b101, 2) == 0
    assert bit(0b101, 3) == 1
    assert bit(0b101, 64) == 0
    with pytest.raises(ValueError):
        bit(-1, 1)
    with pytest.raises(ValueError):
        bit(1, 0)


def test_ordered_pair() -> None:
    assert pot_decide(pair(LT), 1)
    assert pot_count(pair(LT, GT), 1) == 2
    assert pot_count(pair(EQ), 1) == 1


def test_incomparable_pair_needs_two_blocks() -> None:
    assert not pot_decide(pair(INC), 1)
    assert pot_count(pair(INC), 1) == 0
    assert pot_decide(pair(INC), 2)
    assert pot_count(pair(INC), 2) == 1


def test_trivial_instances() -> None:
    assert pot_count(POTInstance(0), 1) == 1
    assert pot_count(POTInstance(1), 1) == 1
    assert pot_decide(POTInstance(1), 1)


def test_unconstrained_counts() -> None:
    assert pot_count(POTInstance(2), 1) == 3
    assert pot_count(POTInstance(2), 2) == 4
    # every order on at most three elements has effective width 2
    assert pot_count(POTInstance(3), 2) == 29
    assert pot_count(POTInstance(3), 3) == 29


def test_empty_constraint_is_unsatisfiable() -> None:
    instance = POTInstance(3, {(0, 2): frozenset()})
    assert not pot_decide(instance, 3)
    assert pot_count(instance, 3) == 0
    assert pot_witness(instance, 3) is None


def test_width_parameter_must_be_positive() -> None:
    with pytest.raises(InvalidInstanceError):
        pot_decide(pair(LT), 0)


def test_witness_is_a_solution() -> None:
    instance = POTInstance.build(
        4, [(0, 1, {LT}), (1, 2, {INC, EQ}), (0, 3, {GT, INC}), (2, 3, {INC})]
    )
    for k in (1, 2, 3):
        scenario = pot_witness(instance, k)
        assert (scenario is not None) == pot_decide(instance, k)
        if scenario is not None:
            assert scenario_realizable(scenario)
            assert satisfies_pot(scenario, instance)
            order, _ = quotient(scenario)
            assert effective_width_at_most(order, k)


def realized_patterns(solver: WaistSolver, key: WaistCallKey) -> t.FrozenSet[int]:
    """Distinct packed scenarios over every split of `key`, without canonical splits."""
    found: t.Set[int] = set()
    for packed, children, _ in solver.steps(key):
        results = [realized_patterns(solver, child) for child in children]
        for combination in product(*results):
            found.add(reduce(or_, combination, packed))
    return frozenset(found)


def test_waist_step_counts() -> None:
    solver = WaistSolver(pair(LT, GT), 1)
    root = solver.root()
    assert solver.waist_step(root) == 2
    assert solver.counts[root] == 2
    incomparable = WaistSolver(pair(INC), 1)
    assert incomparable.waist_step(incomparable.root()) == 0


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("k", [1, 2])
def test_canonical_splits_count_each_scenario_once(n: int, k: int) -> None:
    solver = WaistSolver(POTInstance(n), k)
    assert solver.count() == len(realized_patterns(solver, solver.root()))


def test_constrained_canonical_counts_match_all_splits() -> None:
    instance = POTInstance.build(
        4, [(0, 1, {LT, INC}), (1, 2, {LT, EQ}), (0, 3, {GT, INC}), (2, 3, {INC, LT})]
    )
    for k in (1, 2):
        solver = WaistSolver(instance, k)
        assert solver.count() == len(realized_patterns(solver, solver.root()))


def test_counts_of_all_orders() -> None:
    # width 1 leaves the total preorders, width 2 every preorder
    assert [pot_count(POTInstance(n), 1) for n in range(1, 6)] == [1, 3, 13, 75, 541]
    assert [pot_count(POTInstance(n), 2) for n in range(1, 6)] == [1, 4, 29, 355, 6942]


def test_memo_tables_do_not_change_answers() -> None:
    instance = POTInstance.build(3, [(0, 1, {LT, INC}), (1, 2, {LT, INC})])
    solver = WaistSolver(instance, 2)
    first = solver.count()
    witness = solver.witness()
    solver.counts.clear()
    solver.witnesses.clear()
    assert solver.count() == first
    assert solver.witness() == witness
    assert WaistSolver(instance, 2).count() == first


def test_count_is_monotone_in_k() -> None:
    instance = POTInstance.build(4, [(0, 1, {INC}), (2, 3, {INC}), (0, 2, {LT, INC})])
    counts = [pot_count(instance, k) for k in (1, 2, 3, 4)]
    assert counts == sorted(counts)


@pytest.mark.parametrize("k", [1, 2])
def test_agrees_with_oracle_on_a_sample(k: int) -> None:
    choices = [frozenset(), frozenset({LT}), frozenset({INC}), frozenset({LT, INC, EQ}), frozenset(REL4)]
    for a, b, c in product(choices, repeat=3):
        instance = POTInstance(3, {(0, 1): a, (0, 2): b, (1, 2): c})
        report = pot_oracle(instance, k)
        assert pot_decide(instance, k) is report.decision
        assert pot_count(instance, k) == report.count
        scenario = pot_witness(instance, k)
        assert (scenario is None) is not report.decision
        if scenario is not None:
            assert scenario_realizable(scenario) and satisfies_pot(scenario, instance)
            assert effective_width_at_most(quotient(scenario)[0], k)
