from __future__ import annotations

from qualtime_tools.defaults import DEFAULT_OVERLAP_BOUND, Limits, OverlapBound
from qualtime_tools.protocols import Backend
from qualtime_tools.types import Problem

from .oracles import CSPOracle, IAOracle, POTOracle
from .solvers import CSPSolver, IASolver, POTSolver


def get_backend(
    problem: Problem,
    oracle: bool = False,
    bound: OverlapBound = DEFAULT_OVERLAP_BOUND,
    limits: Limits | None = None,
) -> Backend:
    """Backend solving `problem`, the brute-force oracle when `oracle` is True."""
    if problem is Problem.POT:
        return POTOracle(limits) if oracle else POTSolver()
    if problem is Problem.IA:
        return IAOracle(limits, bound) if oracle else IASolver(bound)
    return CSPOracle(limits) if oracle else CSPSolver()


__all__ = [
    "CSPOracle",
    "CSPSolver",
    "IAOracle",
    "IASolver",
    "POTOracle",
    "POTSolver",
    "get_backend",
]
