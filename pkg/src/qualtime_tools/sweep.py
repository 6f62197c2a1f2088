"""Bounded-overlap interval algebra solver.

The solver sweeps the endpoint order from left to right. Each step materializes
the next cell of an ordered partition: the end-points of some open intervals
(`x_minus` names them by their start) together with the start-points of some
unopened intervals (`y`). Open intervals are grouped by the cell they started in,
every group carrying its remaining overlap budget. A relation between two
intervals is checked against the constraints as soon as the sweep determines it,
that is when the first of the two closes. Opening an interval also rejects the
step early when no allowed relation fits the order of the start-points placed so
far.

Budgets count overlaps semantically: an interval opening in a cell overlaps every
interval still open after that cell and every other interval opening with it,
and every interval still open gains one overlap for each interval opening later.
"""
from __future__ import annotations

import logging
import typing as t
from dataclasses import dataclass, field
from itertools import combinations

from .defaults import DEFAULT_OVERLAP_BOUND, OverlapBound
from .errors import InvalidInstanceError
from .interval import IAInstance, OrderedPartition
from .types import BASIC_RELATIONS, BasicRel, Endpoint
from .utils import members, popcount, submasks, to_mask

logger = logging.getLogger(__name__)

_BASIC_CODE = {rel: index for index, rel in enumerate(BASIC_RELATIONS)}


def _codes(*relations: BasicRel) -> int:
    return sum(1 << _BASIC_CODE[rel] for rel in relations)


# x against y when x starts first, when both start together, and when x is still
# open as y starts
_STARTS_BEFORE = _codes(BasicRel.P, BasicRel.M, BasicRel.O, BasicRel.FI, BasicRel.DI)
_STARTS_WITH = _codes(BasicRel.S, BasicRel.SI, BasicRel.E)
_STRADDLES = _codes(BasicRel.O, BasicRel.FI, BasicRel.DI)


@dataclass(frozen=True)
class SweepState:
    """Memo key of the sweep.

    `closed` holds the intervals whose both endpoints are placed, `open` the
    groups of started intervals in opening order and `budgets` the overlaps each
    group may still take. `unopened` is derived from the other fields and is
    not part of equality.
    """

    closed: int
    open: t.Tuple[int, ...]
    budgets: t.Tuple[int, ...]
    unopened: int = field(default=0, compare=False)

    @property
    def open_mask(self) -> int:
        mask = 0
        for group in self.open:
            mask |= group
        return mask


class SweepSolver:
    """Memoized sweep for one instance, one overlap parameter and one overlap semantics."""

    def __init__(
        self,
        instance: IAInstance,
        k: int,
        bound: OverlapBound = DEFAULT_OVERLAP_BOUND,
    ) -> None:
        if k < 1:
            raise InvalidInstanceError(f"Overlap parameter must be at least 1, got {k}")
        self.instance = instance
        self.k = k
        self.bound = bound
        self.capacity = k - 1 if bound is OverlapBound.FEWER_THAN_K else k
        n = instance.n
        self.everything = (1 << n) - 1
        self.allowed = [
            [sum(1 << _BASIC_CODE[rel] for rel in instance.allowed(i, j)) for j in range(n)]
            for i in range(n)
        ]
        self.may_start_before = self._partners(_STARTS_BEFORE)
        self.may_start_with = self._partners(_STARTS_WITH)
        self.may_straddle = self._partners(_STRADDLES)
        self.counts: t.Dict[SweepState, int] = {}
        self.accepting: t.Dict[SweepState, bool] = {}

    def start(self) -> SweepState:
        return SweepState(0, (), (), unopened=self.everything)

    def admits(self, i: int, j: int, relation: BasicRel) -> bool:
        return bool((self.allowed[i][j] >> _BASIC_CODE[relation]) & 1)

    def _partners(self, codes: int) -> t.List[int]:
        """For each interval, the mask of the others it may relate to by one of `codes`."""
        n = self.instance.n
        return [
            to_mask(j for j in range(n) if j != i and self.allowed[i][j] & codes)
            for i in range(n)
        ]

    def sweep_step(self, state: SweepState, x_minus: int, y: int) -> SweepState | None:
        """Place the next cell: ends of the open intervals `x_minus`, starts of the intervals `y`.

        Returns:
            The successor state, or None when a determined relation breaks a
            constraint or an overlap budget runs out.
        """
        open_mask = state.open_mask
        if not (x_minus or y) or x_minus & ~open_mask or y & ~state.unopened:
            return None
        group_of = {u: index for index, group in enumerate(state.open) for u in members(group)}
        survivors = open_mask & ~x_minus
        later = state.unopened & ~y
        for w in members(y):
            if later & ~self.may_start_before[w]:
                return None
            if y & ~(1 << w) & ~self.may_start_with[w]:
                return None
        for u in members(survivors):
            if y & ~self.may_straddle[u]:
                return None
        closing = members(x_minus)
        for position, u in enumerate(closing):
            group = group_of[u]
            for w in closing[position + 1 :]:
                if group < group_of[w]:
                    relation = BasicRel.FI
                elif group == group_of[w]:
                    relation = BasicRel.E
                else:
                    relation = BasicRel.F
                if not self.admits(u, w, relation):
                    return None
            for w in members(survivors):
                if group < group_of[w]:
                    relation = BasicRel.O
                elif group == group_of[w]:
                    relation = BasicRel.S
                else:
                    relation = BasicRel.D
                if not self.admits(u, w, relation):
                    return None
            for w in members(y):
                if not self.admits(u, w, BasicRel.M):
                    return None
            for w in members(later):
                if not self.admits(u, w, BasicRel.P):
                    return None
        opening = popcount(y)
        groups: t.List[int] = []
        budgets: t.List[int] = []
        for group, budget in zip(state.open, state.budgets):
            if group & survivors:
                groups.append(group & survivors)
                budgets.append(budget - opening)
        if y:
            groups.append(y)
            budgets.append(self.capacity - popcount(survivors) - (opening - 1))
        if any(budget < 0 for budget in budgets):
            return None
        return SweepState(
            state.closed | x_minus, tuple(groups), tuple(budgets), unopened=later
        )

    def moves(self, state: SweepState) -> t.Iterator[t.Tuple[int, int, SweepState]]:
        """Yield `(x_minus, y, successor)` for every accepted step from `state`."""
        open_mask = state.open_mask
        unopened = members(state.unopened)
        for x_minus in submasks(open_mask):
            survivors = open_mask & ~x_minus
            limit = self.capacity + 1 - popcount(survivors)
            for group, budget in zip(state.open, state.budgets):
                if group & survivors:
                    limit = min(limit, budget)
            for size in range(0, max(limit, 0) + 1):
                for chosen in combinations(unopened, size):
                    y = to_mask(chosen)
                    successor = self.sweep_step(state, x_minus, y)
                    if successor is not None:
                        yield x_minus, y, successor

    def count(self, state: SweepState) -> int:
        if state.closed == self.everything:
            return 1
        if state in self.counts:
            return self.counts[state]
        self.counts[state] = total = sum(
            self.count(successor) for _, _, successor in self.moves(state)
        )
        return total

    def accepts(self, state: SweepState) -> bool:
        if state.closed == self.everything:
            return True
        if state in self.accepting:
            return self.accepting[state]
        self.accepting[state] = result = any(
            self.accepts(successor) for _, _, successor in self.moves(state)
        )
        return result

    def witness(self) -> OrderedPartition | None:
        state = self.start()
        if self.instance.has_empty_constraint or not self.accepts(state):
            return None
        cells: t.List[t.List[Endpoint]] = []
        while state.closed != self.everything:
            for x_minus, y, successor in self.moves(state):
                if self.accepts(successor):
                    cells.append(
                        [Endpoint(u, True) for u in members(x_minus)]
                        + [Endpoint(w, False) for w in members(y)]
                    )
                    state = successor
                    break
        return OrderedPartition.from_cells(cells)

    def total(self) -> int:
        if self.instance.has_empty_constraint:
            return 0
        result = self.count(self.start())
        logger.debug(
            "Counted %d layouts of %d intervals at k=%d using %d memo entries",
            result,
            self.instance.n,
            self.k,
            len(self.counts),
        )
        return result


def ia_decide(
    instance: IAInstance, k: int, bound: OverlapBound = DEFAULT_OVERLAP_BOUND
) -> bool:
    """Whether `instance` has a solution in which overlaps are bounded by `k`."""
    if instance.has_empty_constraint:
        return False
    solver = SweepSolver(instance, k, bound)
    result = solver.accepts(solver.start())
    logger.debug("Sweep decision used %d memo entries", len(solver.accepting))
    return result


def ia_count(
    instance: IAInstance, k: int, bound: OverlapBound = DEFAULT_OVERLAP_BOUND
) -> int:
    """Number of endpoint orders solving `instance` with overlaps bounded by `k`."""
    return SweepSolver(instance, k, bound).total()


def ia_witness(
    instance: IAInstance, k: int, bound: OverlapBound = DEFAULT_OVERLAP_BOUND
) -> OrderedPartition | None:
    return SweepSolver(instance, k, bound).witness()
