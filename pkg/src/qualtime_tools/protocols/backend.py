from __future__ import annotations

import typing as t
from typing import Protocol

from ..types import Problem


class Backend(Protocol):
    """A backend decides, counts and solves instances of one problem family."""

    problem: Problem

    def decide(self, instance: t.Any, k: int) -> bool:
        """Decide whether the instance has a solution.

        Arguments:
            instance: A parsed instance of the backend problem family.
            k: The structural parameter (effective width for POT, overlap bound for IA).
              Finite-domain CSP backends ignore it.

        Returns:
            True when the instance is satisfiable.
        """

    def count(self, instance: t.Any, k: int) -> int:
        """Count the solutions of the instance.

        Arguments:
            instance: A parsed instance of the backend problem family.
            k: The structural parameter.

        Returns:
            The number of distinct solutions: atomic scenarios for POT, endpoint
            orders for IA, assignments of the constrained variables for CSP.
        """

    def witness(self, instance: t.Any, k: int) -> t.Any:
        """Return one solution of the instance, or None when it is unsatisfiable."""
