"""Exhaustive effective-width checker.

A partial order has effective width `k` when its ground set splits into a waist of
at most `k` pairwise incomparable blocks, a lower part whose elements each lie
strictly below some whole block, and an upper part whose elements each lie
strictly above some whole block. At least two parts must be nonempty unless the
order has at most one element, every lower element below an upper element must
be separated from it by a whole block, and every part must recursively have
effective width `k`.

This module is a desk-scale verifier used by the oracles and the `width` command,
the solvers never call it.
"""
from __future__ import annotations

import logging
import typing as t
from dataclasses import dataclass
from itertools import combinations

from .defaults import DEFAULT_LIMITS, Limits
from .errors import InvalidInstanceError, SizeLimitExceeded
from .order import Element, PartialOrder, restrict_order
from .utils import set_partitions

logger = logging.getLogger(__name__)

Block = t.Tuple[Element, ...]


@dataclass(frozen=True)
class WaistDecomposition:
    """Certificate that a partial order has a given effective width.

    A leaf has an empty waist and empty lower and upper parts, it certifies an
    order with at most one element. Otherwise `children` holds one decomposition
    for each nonempty part, in the order returned by `parts()`.
    """

    elements: Block
    waist: t.Tuple[Block, ...] = ()
    lower: Block = ()
    upper: Block = ()
    children: t.Tuple[WaistDecomposition, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.waist and not self.lower and not self.upper

    def parts(self) -> t.List[Block]:
        """Nonempty waist blocks, then the lower part, then the upper part."""
        return [part for part in (*self.waist, self.lower, self.upper) if part]

    def depth(self) -> int:
        return 1 + max((child.depth() for child in self.children), default=0)


def _strictly_below(order: PartialOrder, x: Element, block: t.Iterable[Element]) -> bool:
    return all(order.lt(x, y) for y in block)


def _strictly_above(order: PartialOrder, x: Element, block: t.Iterable[Element]) -> bool:
    return all(order.lt(y, x) for y in block)


def _pairwise_incomparable(order: PartialOrder, blocks: t.Sequence[Block]) -> bool:
    for first, second in combinations(blocks, 2):
        for x in first:
            for y in second:
                if order.le(x, y) or order.le(y, x):
                    return False
    return True


def _separated(
    order: PartialOrder,
    waist: t.Sequence[Block],
    lower: t.Iterable[Element],
    upper: t.Iterable[Element],
) -> bool:
    for x in lower:
        for y in upper:
            if order.le(x, y) and not any(
                all(order.le(x, z) and order.le(z, y) for z in block) for block in waist
            ):
                return False
    return True


def _check_cap(order: PartialOrder, k: int, limits: Limits) -> None:
    if k < 1:
        raise InvalidInstanceError(f"Effective width parameter must be at least 1, got {k}")
    if len(order) > limits.width_elements:
        raise SizeLimitExceeded(
            f"Exhaustive width check is capped at {limits.width_elements} elements, "
            f"got {len(order)}"
        )


def find_waist_decomposition(
    order: PartialOrder, k: int, limits: Limits | None = None
) -> WaistDecomposition | None:
    """Search exhaustively for a decomposition certifying effective width at most `k`.

    Returns:
        A certificate accepted by `effective_width_certificate_check`, or None
        when the order does not have effective width `k`.

    Raises:
        SizeLimitExceeded: When the order has more elements than `limits.width_elements`.
    """
    _check_cap(order, k, limits or DEFAULT_LIMITS)
    memo: t.Dict[t.FrozenSet[Element], WaistDecomposition | None] = {}

    def decompose(subset: Block) -> WaistDecomposition | None:
        key = frozenset(subset)
        if key in memo:
            return memo[key]
        memo[key] = result = _decompose(subset)
        return result

    def _decompose(subset: Block) -> WaistDecomposition | None:
        if len(subset) <= 1:
            return WaistDecomposition(subset)
        for size in range(1, len(subset) + 1):
            for chosen in combinations(subset, size):
                rest = [x for x in subset if x not in chosen]
                for partition in set_partitions(chosen, k):
                    waist = tuple(tuple(block) for block in partition)
                    if not _pairwise_incomparable(order, waist):
                        continue
                    lower = tuple(
                        x for x in rest if any(_strictly_below(order, x, b) for b in waist)
                    )
                    upper = tuple(
                        x for x in rest if any(_strictly_above(order, x, b) for b in waist)
                    )
                    if len(lower) + len(upper) != len(rest):
                        continue
                    if len(waist) + bool(lower) + bool(upper) < 2:
                        continue
                    if not _separated(order, waist, lower, upper):
                        continue
                    candidate = WaistDecomposition(subset, waist, lower, upper)
                    children = []
                    for part in candidate.parts():
                        child = decompose(part)
                        if child is None:
                            break
                        children.append(child)
                    else:
                        return WaistDecomposition(
                            subset, waist, lower, upper, tuple(children)
                        )
        return None

    result = decompose(order.elements)
    logger.debug(
        "Width search over %d elements at k=%d explored %d subsets", len(order), k, len(memo)
    )
    return result


def effective_width_at_most(order: PartialOrder, k: int, limits: Limits | None = None) -> bool:
    """Whether `order` has effective width `k`.

    Raises:
        SizeLimitExceeded: When the order has more elements than `limits.width_elements`.
    """
    return find_waist_decomposition(order, k, limits) is not None


def effective_width_certificate_check(
    order: PartialOrder, k: int, certificate: WaistDecomposition
) -> bool:
    """Check every condition of the effective-width definition at every node of `certificate`."""
    if k < 1 or len(set(certificate.elements)) != len(certificate.elements):
        return False
    if set(certificate.elements) != set(order.elements):
        return False
    if certificate.is_leaf:
        return len(certificate.elements) <= 1 and not certificate.children
    waist = [block for block in certificate.waist if block]
    if len(waist) > k:
        return False
    parts = certificate.parts()
    placed = [x for part in parts for x in part]
    if len(placed) != len(set(placed)) or set(placed) != set(certificate.elements):
        return False
    if len(parts) < 2:
        return False
    if not all(any(_strictly_below(order, x, b) for b in waist) for x in certificate.lower):
        return False
    if not all(any(_strictly_above(order, x, b) for b in waist) for x in certificate.upper):
        return False
    if not _separated(order, waist, certificate.lower, certificate.upper):
        return False
    if not _pairwise_incomparable(order, waist):
        return False
    if len(certificate.children) != len(parts):
        return False
    return all(
        effective_width_certificate_check(restrict_order(order, part), k, child)
        for part, child in zip(parts, certificate.children)
    )
