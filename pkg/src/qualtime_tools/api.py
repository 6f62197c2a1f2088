from __future__ import annotations

import typing as t
from pathlib import Path

from .adapters import get_backend
from .csp import CSPInstance
from .defaults import DEFAULT_OVERLAP_BOUND, Limits, OverlapBound
from .formats import Instance, parse
from .interval import IAInstance
from .order import PartialOrder, POTInstance
from .types import Problem
from .width import effective_width_at_most

ProblemInstance = t.Union[POTInstance, IAInstance, CSPInstance]


def load_instance(source: t.Union[str, Path, t.TextIO]) -> Instance:
    """Parse an instance or a partial order from a file path or a text stream."""
    return parse(source)


def problem_of(instance: ProblemInstance) -> Problem:
    if isinstance(instance, POTInstance):
        return Problem.POT
    if isinstance(instance, IAInstance):
        return Problem.IA
    if isinstance(instance, CSPInstance):
        return Problem.CSP
    raise TypeError(f"Not a problem instance: {type(instance).__name__}")


def solve(
    instance: ProblemInstance,
    k: int,
    oracle: bool = False,
    bound: OverlapBound = DEFAULT_OVERLAP_BOUND,
    limits: Limits | None = None,
) -> bool:
    """Decide `instance` with the solver of its problem family, or with its oracle."""
    return get_backend(problem_of(instance), oracle, bound, limits).decide(instance, k)


def count(
    instance: ProblemInstance,
    k: int,
    oracle: bool = False,
    bound: OverlapBound = DEFAULT_OVERLAP_BOUND,
    limits: Limits | None = None,
) -> int:
    """Count the solutions of `instance` with the solver of its problem family, or with its oracle."""
    return get_backend(problem_of(instance), oracle, bound, limits).count(instance, k)


def witness(
    instance: ProblemInstance,
    k: int,
    oracle: bool = False,
    bound: OverlapBound = DEFAULT_OVERLAP_BOUND,
    limits: Limits | None = None,
) -> t.Any:
    return get_backend(problem_of(instance), oracle, bound, limits).witness(instance, k)


def check_width(order: PartialOrder, k: int, limits: Limits | None = None) -> bool:
    """Whether `order` has effective width `k`, by exhaustive search."""
    return effective_width_at_most(order, k, limits)


__all__ = ["load_instance", "problem_of", "solve", "count", "witness", "check_width"]
