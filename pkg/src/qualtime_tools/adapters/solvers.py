"""Backends running the parameterized solvers."""
from __future__ import annotations

import typing as t

from qualtime_tools.csp import BranchSolver, CSPInstance
from qualtime_tools.defaults import DEFAULT_OVERLAP_BOUND, OverlapBound
from qualtime_tools.interval import IAInstance, OrderedPartition
from qualtime_tools.order import AtomicScenario, POTInstance
from qualtime_tools.pot import pot_count, pot_decide, pot_witness
from qualtime_tools.protocols import Backend
from qualtime_tools.sweep import ia_count, ia_decide, ia_witness
from qualtime_tools.types import Problem


class POTSolver(Backend):
    problem = Problem.POT

    def decide(self, instance: POTInstance, k: int) -> bool:
        return pot_decide(instance, k)

    def count(self, instance: POTInstance, k: int) -> int:
        return pot_count(instance, k)

    def witness(self, instance: POTInstance, k: int) -> AtomicScenario | None:
        return pot_witness(instance, k)


class IASolver(Backend):
    problem = Problem.IA

    def __init__(self, bound: OverlapBound = DEFAULT_OVERLAP_BOUND) -> None:
        self.bound = bound

    def decide(self, instance: IAInstance, k: int) -> bool:
        return ia_decide(instance, k, self.bound)

    def count(self, instance: IAInstance, k: int) -> int:
        return ia_count(instance, k, self.bound)

    def witness(self, instance: IAInstance, k: int) -> OrderedPartition | None:
        return ia_witness(instance, k, self.bound)


class CSPSolver(Backend):
    """Tuple branching solver. The parameter `k` is not used."""

    problem = Problem.CSP

    def decide(self, instance: CSPInstance, k: int) -> bool:
        return BranchSolver(instance).solve() is not None

    def count(self, instance: CSPInstance, k: int) -> int:
        return BranchSolver(instance).count()

    def witness(self, instance: CSPInstance, k: int) -> t.Dict[int, int] | None:
        return BranchSolver(instance).solve()
