"""Backends running the brute-force oracles, within the caps of `Limits`."""
from __future__ import annotations

import typing as t

from qualtime_tools.csp import CSPInstance, csp_enumerate
from qualtime_tools.defaults import DEFAULT_LIMITS, DEFAULT_OVERLAP_BOUND, Limits, OverlapBound
from qualtime_tools.interval import IAInstance
from qualtime_tools.oracle import OracleReport, ia_oracle, pot_oracle
from qualtime_tools.order import POTInstance
from qualtime_tools.protocols import Backend
from qualtime_tools.types import Problem


class _OracleBackend(Backend):
    def __init__(self, limits: Limits | None = None) -> None:
        self.limits = limits or DEFAULT_LIMITS

    def report(self, instance: t.Any, k: int) -> OracleReport:
        raise NotImplementedError

    def decide(self, instance: t.Any, k: int) -> bool:
        return self.report(instance, k).decision

    def count(self, instance: t.Any, k: int) -> int:
        return self.report(instance, k).count

    def witness(self, instance: t.Any, k: int) -> t.Any:
        witnesses = self.report(instance, k).witnesses
        return witnesses[0] if witnesses else None


class POTOracle(_OracleBackend):
    problem = Problem.POT

    def report(self, instance: POTInstance, k: int) -> OracleReport:
        return pot_oracle(instance, k, self.limits)


class IAOracle(_OracleBackend):
    problem = Problem.IA

    def __init__(
        self, limits: Limits | None = None, bound: OverlapBound = DEFAULT_OVERLAP_BOUND
    ) -> None:
        super().__init__(limits)
        self.bound = bound

    def report(self, instance: IAInstance, k: int) -> OracleReport:
        return ia_oracle(instance, k, self.limits, self.bound)


class CSPOracle(_OracleBackend):
    problem = Problem.CSP

    def report(self, instance: CSPInstance, k: int) -> OracleReport:
        return csp_enumerate(instance, self.limits)
