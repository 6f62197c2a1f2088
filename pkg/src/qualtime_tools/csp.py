"""Finite-domain constraint satisfaction.

Constraints are explicit lists of allowed tuples. Models are counted over the
variables that occur in some constraint, variables outside every scope are free
and not enumerated.
"""
from __future__ import annotations

import logging
import typing as t
from dataclasses import dataclass, field
from itertools import product

from .defaults import DEFAULT_LIMITS, Limits
from .errors import InvalidInstanceError, SizeLimitExceeded
from .oracle import OracleReport
from .rng import SplitMix64, derive_seed

logger = logging.getLogger(__name__)

Assignment = t.Dict[int, int]


@dataclass(frozen=True)
class Constraint:
    scope: t.Tuple[int, ...]
    relation: t.FrozenSet[t.Tuple[int, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "scope", tuple(self.scope))
        object.__setattr__(self, "relation", frozenset(tuple(row) for row in self.relation))
        for row in self.relation:
            if len(row) != len(self.scope):
                raise InvalidInstanceError(
                    f"Tuple {row} does not match the arity {len(self.scope)} of scope {self.scope}"
                )

    @property
    def arity(self) -> int:
        return len(self.scope)

    def extend(self, assignment: Assignment, row: t.Tuple[int, ...]) -> Assignment | None:
        """`assignment` extended with `row` on the scope, or None if they disagree."""
        extended = dict(assignment)
        for variable, value in zip(self.scope, row):
            if extended.setdefault(variable, value) != value:
                return None
        return extended

    def accepts(self, assignment: Assignment) -> bool:
        return tuple(assignment[variable] for variable in self.scope) in self.relation


class CSPParams(t.NamedTuple):
    dom_size: int
    max_arity: int
    max_degree: int
    max_cardinality: int


@dataclass(frozen=True)
class CSPInstance:
    """A finite-domain CSP instance over variables `0..n-1`.

    `domain` is an optional declared domain. When present it must contain every
    value used by the constraints.
    """

    n: int
    constraints: t.Tuple[Constraint, ...] = ()
    domain: t.FrozenSet[int] | None = field(default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.n < 0:
            raise InvalidInstanceError(f"Variable count must be non-negative, got {self.n}")
        for constraint in self.constraints:
            for variable in constraint.scope:
                if not 0 <= variable < self.n:
                    raise InvalidInstanceError(
                        f"Scope {constraint.scope} mentions variable {variable} outside 0..{self.n - 1}"
                    )
        if self.domain is not None:
            object.__setattr__(self, "domain", frozenset(self.domain))
            unknown = self.values() - self.domain
            if unknown:
                raise InvalidInstanceError(
                    f"Declared domain does not contain values {sorted(unknown)}"
                )

    def values(self) -> t.FrozenSet[int]:
        """Values occurring in some constraint tuple."""
        return frozenset(value for c in self.constraints for row in c.relation for value in row)

    def constrained_variables(self) -> t.List[int]:
        return sorted({variable for c in self.constraints for variable in c.scope})

    def satisfied_by(self, assignment: Assignment) -> bool:
        return all(constraint.accepts(assignment) for constraint in self.constraints)


def params(instance: CSPInstance) -> CSPParams:
    """Domain size, largest arity, largest variable degree and largest relation size.

    All four are 0 when the instance has no constraint.
    """
    degrees: t.Dict[int, int] = {}
    for constraint in instance.constraints:
        for variable in set(constraint.scope):
            degrees[variable] = degrees.get(variable, 0) + 1
    return CSPParams(
        dom_size=len(instance.values()),
        max_arity=max((c.arity for c in instance.constraints), default=0),
        max_degree=max(degrees.values(), default=0),
        max_cardinality=max((len(c.relation) for c in instance.constraints), default=0),
    )


def csp_enumerate(instance: CSPInstance, limits: Limits | None = None) -> OracleReport:
    """Decide and count by trying every assignment of the occurring values.

    Only variables occurring in some constraint are assigned, so models are
    counted over those variables rather than over all `dom^n` assignments. This
    matches `BranchSolver.count`.

    Raises:
        SizeLimitExceeded: When there are more assignments than `limits.csp_assignments`.
    """
    limits = limits or DEFAULT_LIMITS
    variables = instance.constrained_variables()
    values = sorted(instance.values())
    if len(values) ** len(variables) > limits.csp_assignments:
        raise SizeLimitExceeded(
            f"Enumeration of {len(values)}^{len(variables)} assignments exceeds the cap "
            f"of {limits.csp_assignments}"
        )
    count = 0
    witnesses: t.List[Assignment] = []
    for row in product(values, repeat=len(variables)):
        assignment = dict(zip(variables, row))
        if instance.satisfied_by(assignment):
            count += 1
            if len(witnesses) < limits.witnesses:
                witnesses.append(assignment)
    return OracleReport(count > 0, count, witnesses)


class BranchSolver:
    """Branch on the tuples of the most constrained constraint.

    Every node picks, among constraints with an unassigned variable, the one
    with the fewest tuples consistent with the current assignment (ties by
    position) and branches once per such tuple. `nodes` and `max_branching`
    record the size of the search.
    """

    def __init__(self, instance: CSPInstance) -> None:
        self.instance = instance
        self.nodes = 0
        self.max_branching = 0

    def _options(self, assignment: Assignment) -> t.List[Assignment] | None:
        """Extensions to branch on, an empty list at a solution, None at a dead end."""
        self.nodes += 1
        best: t.List[Assignment] | None = None
        for constraint in self.instance.constraints:
            extensions = []
            for row in sorted(constraint.relation):
                extended = constraint.extend(assignment, row)
                if extended is not None:
                    extensions.append(extended)
            if not extensions:
                return None
            if all(variable in assignment for variable in constraint.scope):
                continue
            if best is None or len(extensions) < len(best):
                best = extensions
        if best is None:
            return []
        self.max_branching = max(self.max_branching, len(best))
        return best

    def solve(self, assignment: Assignment | None = None) -> Assignment | None:
        """A model extending `assignment`, or None."""
        assignment = assignment or {}
        options = self._options(assignment)
        if options is None:
            return None
        if not options:
            return assignment
        for extended in options:
            model = self.solve(extended)
            if model is not None:
                return model
        return None

    def count(self, assignment: Assignment | None = None) -> int:
        """Number of models extending `assignment`.

        Tuples consistent with the current assignment differ on an unassigned
        variable, so branches never share a model.
        """
        assignment = assignment or {}
        options = self._options(assignment)
        if options is None:
            return 0
        if not options:
            return 1
        return sum(self.count(extended) for extended in options)


def csp_branch_solve(instance: CSPInstance) -> bool:
    solver = BranchSolver(instance)
    result = solver.solve() is not None
    logger.debug(
        "Branching explored %d nodes, widest branching %d", solver.nodes, solver.max_branching
    )
    return result


def csp_branch_count(instance: CSPInstance) -> int:
    solver = BranchSolver(instance)
    result = solver.count()
    logger.debug(
        "Branching counted %d models in %d nodes, widest branching %d",
        result,
        solver.nodes,
        solver.max_branching,
    )
    return result


def gen_sparse_bincsp(d: int, n: int, seed: int) -> CSPInstance:
    """Random binary CSP over `{0..d-1}` where every variable occurs in at most `3 * d * d` constraints.

    The result only depends on `(d, n, seed)`.
    """
    if d < 2 or n < 1:
        raise InvalidInstanceError(f"Sparse binary CSP needs d >= 2 and n >= 1, got d={d}, n={n}")
    rng = SplitMix64(derive_seed("sparse-bincsp", d, n, seed))
    cap = 3 * d * d
    degrees = [0] * n
    all_pairs = list(product(range(d), repeat=2))
    constraints = []
    for _ in range(rng.randint(n, 2 * n)):
        if n == 1:
            scope = (0, 0)
        else:
            first, second = rng.sample(range(n), 2)
            scope = (first, second)
        if any(degrees[variable] >= cap for variable in set(scope)):
            continue
        relation = {row for row in all_pairs if rng.chance(0.5)}
        if not relation:
            relation = {rng.choice(all_pairs)}
        for variable in set(scope):
            degrees[variable] += 1
        constraints.append(Constraint(scope, frozenset(relation)))
    return CSPInstance(n, tuple(constraints), frozenset(range(d)))
