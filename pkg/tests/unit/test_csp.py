from __future__ import annotations

from itertools import product

import pytest

from qualtime_tools.csp import (
    BranchSolver,
    Constraint,
    CSPInstance,
    CSPParams,
    csp_branch_count,
    csp_branch_solve,
    csp_enumerate,
    gen_sparse_bincsp,
    params,
)
from qualtime_tools.defaults import Limits
from qualtime_tools.errors import InvalidInstanceError, SizeLimitExceeded
from qualtime_tools.rng import SplitMix64

DIFFERENT = frozenset({(0, 1), (1, 0)})


def colouring(n: int, edges: list) -> CSPInstance:
    return CSPInstance(n, tuple(Constraint(edge, DIFFERENT) for edge in edges), frozenset({0, 1}))


def random_instance(rng: SplitMix64) -> CSPInstance:
    n = rng.randint(1, 5)
    d = rng.randint(1, 3)
    constraints = []
    for _ in range(rng.randint(0, 4)):
        arity = rng.randint(1, min(3, n))
        scope = tuple(rng.sample(range(n), arity))
        rows = [row for row in product(range(d), repeat=arity) if rng.chance(0.4)]
        constraints.append(Constraint(scope, frozenset(rows)))
    return CSPInstance(n, tuple(constraints))


def test_triangle_is_not_two_colourable() -> None:
    instance = colouring(3, [(0, 1), (1, 2), (0, 2)])
    assert not csp_branch_solve(instance)
    assert csp_branch_count(instance) == 0
    assert not csp_enumerate(instance).decision


def test_path_has_two_colourings() -> None:
    instance = colouring(3, [(0, 1), (1, 2)])
    assert csp_branch_solve(instance)
    assert csp_branch_count(instance) == 2
    report = csp_enumerate(instance)
    assert report.count == 2
    assert {tuple(sorted(w.items())) for w in report.witnesses} == {
        ((0, 0), (1, 1), (2, 0)),
        ((0, 1), (1, 0), (2, 1)),
    }


def test_free_variables_are_not_counted() -> None:
    instance = colouring(4, [(0, 1)])
    report = csp_enumerate(instance)
    assert report.count == csp_branch_count(instance) == 2
    assert all(set(witness) == {0, 1} for witness in report.witnesses)


def test_unary_constraint() -> None:
    instance = CSPInstance(1, (Constraint((0,), frozenset({(1,)})),))
    solver = BranchSolver(instance)
    assert solver.solve() == {0: 1}
    assert csp_enumerate(instance).count == 1


def test_no_constraint_has_one_empty_model() -> None:
    assert csp_branch_count(CSPInstance(3)) == 1
    report = csp_enumerate(CSPInstance(3))
    assert (report.decision, report.count, report.witnesses) == (True, 1, [{}])


def test_empty_relation() -> None:
    instance = CSPInstance(2, (Constraint((0, 1), frozenset()),))
    assert not csp_branch_solve(instance)
    assert csp_enumerate(instance).count == 0


def test_repeated_variable_in_scope() -> None:
    instance = CSPInstance(1, (Constraint((0, 0), frozenset({(0, 1), (1, 1)})),))
    assert BranchSolver(instance).solve() == {0: 1}
    assert csp_branch_count(instance) == 1
    assert csp_enumerate(instance).count == 1


def test_params() -> None:
    instance = CSPInstance(
        4,
        (
            Constraint((0, 1), DIFFERENT),
            Constraint((1, 2, 3), frozenset({(0, 0, 2)})),
            Constraint((1,), frozenset({(0,), (1,), (2,)})),
        ),
    )
    assert params(instance) == CSPParams(dom_size=3, max_arity=3, max_degree=3, max_cardinality=3)
    reordered = CSPInstance(4, tuple(reversed(instance.constraints)))
    assert params(reordered) == params(instance)
    assert params(CSPInstance(2)) == CSPParams(0, 0, 0, 0)


def test_instance_validation() -> None:
    with pytest.raises(InvalidInstanceError):
        CSPInstance(2, (Constraint((0, 2), DIFFERENT),))
    with pytest.raises(InvalidInstanceError):
        CSPInstance(2, (Constraint((0, 1), frozenset({(0, 5)})),), frozenset({0, 1}))
    with pytest.raises(InvalidInstanceError):
        Constraint((0, 1), frozenset({(0,)}))


def test_enumeration_cap() -> None:
    instance = colouring(3, [(0, 1), (1, 2)])
    with pytest.raises(SizeLimitExceeded):
        csp_enumerate(instance, Limits(csp_assignments=4))


def test_branching_agrees_with_enumeration() -> None:
    rng = SplitMix64(2024)
    for _ in range(300):
        instance = random_instance(rng)
        report = csp_enumerate(instance)
        solver = BranchSolver(instance)
        assert (solver.solve() is not None) is report.decision
        assert csp_branch_count(instance) == report.count
        assert solver.max_branching <= params(instance).max_cardinality


def test_sparse_generator() -> None:
    instance = gen_sparse_bincsp(3, 8, 7)
    assert instance == gen_sparse_bincsp(3, 8, 7)
    assert instance.domain == frozenset({0, 1, 2})
    summary = params(instance)
    assert summary.max_arity == 2
    assert summary.max_degree <= 3 * 3 * 3
    assert summary.max_cardinality <= 9
    assert gen_sparse_bincsp(2, 1, 0).constraints[0].scope == (0, 0)
    with pytest.raises(InvalidInstanceError):
        gen_sparse_bincsp(1, 3, 0)
