"""Seeded instance generators.

Satisfiable instances are built around a planted solution: constraints always
admit the planted relation, plus extra relations at `DEFAULT_EXTRA_RELATION_RATE`.
With `unsat_mix` one constraint is replaced by a set excluding the planted
relation, which usually makes the instance unsatisfiable.
"""
from __future__ import annotations

import logging
import typing as t

from .csp import CSPInstance, gen_sparse_bincsp
from .defaults import (
    DEFAULT_CONSTRAINT_DENSITY,
    DEFAULT_EXTRA_RELATION_RATE,
    DEFAULT_OVERLAP_BOUND,
    OverlapBound,
)
from .errors import InvalidInstanceError
from .interval import IAInstance, OrderedPartition, basic_relation_of
from .order import POTInstance, make_partial_order
from .rng import SplitMix64, derive_seed
from .types import BASIC_RELATIONS, REL4, Endpoint, Problem
from .utils import pairs

logger = logging.getLogger(__name__)

R = t.TypeVar("R")


def _constraints(
    rng: SplitMix64,
    truth: t.Mapping[t.Tuple[int, int], R],
    universe: t.Sequence[R],
    unsat_mix: bool,
) -> t.Dict[t.Tuple[int, int], t.FrozenSet[R]]:
    constraints: t.Dict[t.Tuple[int, int], t.FrozenSet[R]] = {}
    for pair, planted in truth.items():
        if not rng.chance(DEFAULT_CONSTRAINT_DENSITY):
            continue
        extra = {rel for rel in universe if rel != planted and rng.chance(DEFAULT_EXTRA_RELATION_RATE)}
        constraints[pair] = frozenset({planted} | extra)
    if unsat_mix and truth:
        candidates = sorted(constraints) or sorted(truth)
        pair = rng.choice(candidates)
        others = [rel for rel in universe if rel != truth[pair]]
        chosen = {rel for rel in others if rng.chance(0.5)} or {rng.choice(others)}
        constraints[pair] = frozenset(chosen)
    return constraints


def _planted_order(
    rng: SplitMix64, elements: t.List[int], k: int
) -> t.List[t.Tuple[int, int]]:
    """Strict pairs of a random order of effective width `k` over `elements`."""
    if len(elements) <= 1:
        return []
    elements = list(elements)
    rng.shuffle(elements)
    blocks_count = rng.randint(1, min(k, len(elements)))
    waist_size = rng.randint(blocks_count, len(elements))
    if waist_size == len(elements) and blocks_count == 1:
        waist_size -= 1
    waist, rest = elements[:waist_size], elements[waist_size:]
    cuts = sorted(rng.sample(range(1, waist_size), blocks_count - 1)) if blocks_count > 1 else []
    blocks = [waist[a:b] for a, b in zip([0] + cuts, cuts + [waist_size])]
    lower: t.List[t.Tuple[int, int]] = []
    upper: t.List[t.Tuple[int, int]] = []
    result: t.List[t.Tuple[int, int]] = []
    for x in rest:
        block = rng.randbelow(len(blocks))
        if rng.chance(0.5):
            lower.append((x, block))
            result.extend((x, w) for w in blocks[block])
        else:
            upper.append((x, block))
            result.extend((w, x) for w in blocks[block])
    result.extend((x, y) for x, a in lower for y, b in upper if a == b)
    for part in [*blocks, [x for x, _ in lower], [y for y, _ in upper]]:
        result.extend(_planted_order(rng, part, k))
    return result


def gen_pot(n: int, k: int, seed: int, unsat_mix: bool = False) -> POTInstance:
    """Random instance whose planted solution is an order of effective width `k`."""
    rng = SplitMix64(derive_seed(Problem.POT.value, n, k, seed))
    if n == 0:
        return POTInstance(0)
    size = n - rng.randbelow(n // 3 + 1)
    order = make_partial_order(range(size), _planted_order(rng, list(range(size)), k))
    variables = list(range(n))
    rng.shuffle(variables)
    mapping = [0] * n
    for position, variable in enumerate(variables):
        mapping[variable] = position if position < size else rng.randbelow(size)
    truth = {(i, j): order.relation(mapping[i], mapping[j]) for i, j in pairs(n)}
    return POTInstance(n, _constraints(rng, truth, REL4, unsat_mix))


def planted_layout(
    rng: SplitMix64, n: int, k: int, bound: OverlapBound = DEFAULT_OVERLAP_BOUND
) -> OrderedPartition:
    """Random endpoint order of `n` intervals where overlaps are bounded by `k`."""
    capacity = k - 1 if bound is OverlapBound.FEWER_THAN_K else k
    unopened = list(range(n))
    rng.shuffle(unopened)
    overlapped: t.Dict[int, int] = {}
    cells: t.List[t.List[Endpoint]] = []
    while unopened or overlapped:
        closing = [u for u in sorted(overlapped) if rng.chance(0.5)]
        survivors = [u for u in sorted(overlapped) if u not in closing]
        limit = min(
            [capacity + 1 - len(survivors)] + [capacity - overlapped[u] for u in survivors]
        )
        opening_count = rng.randint(0, max(0, min(limit, len(unopened))))
        if not closing and not opening_count:
            if unopened and limit >= 1:
                opening_count = 1
            else:
                closing = [rng.choice(survivors)]
                survivors.remove(closing[0])
        opening, unopened = unopened[:opening_count], unopened[opening_count:]
        for u in closing:
            del overlapped[u]
        for u in survivors:
            overlapped[u] += len(opening)
        for u in opening:
            overlapped[u] = len(survivors) + len(opening) - 1
        cells.append([Endpoint(u, True) for u in closing] + [Endpoint(u, False) for u in opening])
    return OrderedPartition.from_cells(cells)


def gen_ia(
    n: int,
    k: int,
    seed: int,
    unsat_mix: bool = False,
    bound: OverlapBound = DEFAULT_OVERLAP_BOUND,
) -> IAInstance:
    """Random instance whose planted endpoint order keeps overlaps bounded by `k`."""
    rng = SplitMix64(derive_seed(Problem.IA.value, n, k, seed))
    layout = planted_layout(rng, n, k, bound)
    truth = {(i, j): basic_relation_of(layout, i, j) for i, j in pairs(n)}
    return IAInstance(n, _constraints(rng, truth, BASIC_RELATIONS, unsat_mix))


def gen_csp(n: int, k: int, seed: int) -> CSPInstance:
    """Sparse binary instance over a domain of `max(2, k)` values."""
    if n == 0:
        return CSPInstance(0)
    return gen_sparse_bincsp(max(2, k), n, derive_seed(Problem.CSP.value, n, k, seed))


def generate(
    problem: Problem,
    n: int,
    k: int,
    seed: int,
    unsat_mix: bool = False,
    bound: OverlapBound = DEFAULT_OVERLAP_BOUND,
) -> t.Union[POTInstance, IAInstance, CSPInstance]:
    """Deterministic instance for `(problem, n, k, seed)`."""
    if n < 0 or k < 1:
        raise InvalidInstanceError(f"Generators need n >= 0 and k >= 1, got n={n}, k={k}")
    logger.debug("Generating %s instance n=%d k=%d seed=%d", problem.value, n, k, seed)
    if problem is Problem.POT:
        return gen_pot(n, k, seed, unsat_mix)
    if problem is Problem.IA:
        return gen_ia(n, k, seed, unsat_mix, bound)
    return gen_csp(n, k, seed)
