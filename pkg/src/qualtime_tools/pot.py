"""Partially Ordered Time solver for orders of bounded effective width.

The solver builds an atomic scenario top-down. A call receives a set of variables
and, for each of them, the set of other members it may still strictly precede
without breaking transitivity with relations fixed by enclosing calls. The call
either makes all its variables equal, or guesses a waist of at most `k` pairwise
incomparable blocks, sends every other variable below or above the waist with a
glue pattern saying which waist variables it is related to, and recurses on the
lower part, each block and the upper part.

Deciding tries every split. Several splits can realize the same scenario, so
counting only sums over canonical splits (see `WaistSolver.canonical_steps`),
of which every scenario has exactly one.
"""
from __future__ import annotations

import logging
import typing as t
from dataclasses import dataclass
from itertools import combinations, product

from .errors import InvalidInstanceError
from .order import AtomicScenario, POTInstance
from .types import REL4, Rel4
from .utils import members, pair_index, set_partitions, to_mask

logger = logging.getLogger(__name__)

LT, GT, EQ, INC = (rel.code for rel in REL4)
CONVERSE_CODE = tuple(rel.converse.code for rel in REL4)

LOWER = 0
UPPER = 1


def bit(n: int, i: int) -> int:
    """The `i`-th bit of `n`, bit 1 being the least significant one."""
    if n < 0 or i < 1:
        raise ValueError(f"bit() expects n >= 0 and i >= 1, got n={n}, i={i}")
    return (n >> (i - 1)) & 1


@dataclass(frozen=True)
class WaistCallKey:
    """Arguments of one recursive call, used as memo key.

    `may_precede[p]` is the mask of members that the `p`-th member (in ascending
    variable order) may strictly precede. This is finer than recording relations
    to two temporary waists, and stays exact however deep calls are nested.
    """

    members: int
    may_precede: t.Tuple[int, ...]


@dataclass(frozen=True)
class WaistPartition:
    """One way of splitting the members of a call.

    `glue` maps each non-waist variable to an integer whose bit `p + 1` is set
    when the variable is related to the `p`-th waist variable: strictly below it
    for lower variables, strictly above it for upper variables.
    """

    waist: t.Tuple[int, ...]
    blocks: t.Tuple[int, ...]
    lower: int
    upper: int
    glue: t.Tuple[t.Tuple[int, int], ...]

    def related(self, variable: int, position: int) -> bool:
        return bool(bit(dict(self.glue)[variable], position + 1))

    def relations(self) -> t.Iterator[t.Tuple[int, int, Rel4]]:
        """Relations fixed by the split between variables of different parts."""
        for first, second in combinations(self.blocks, 2):
            for a, b in product(members(first), members(second)):
                yield a, b, Rel4.INC
        for x in members(self.lower):
            for p, w in enumerate(self.waist):
                yield x, w, Rel4.LT if self.related(x, p) else Rel4.INC
        for y in members(self.upper):
            for p, w in enumerate(self.waist):
                yield y, w, Rel4.GT if self.related(y, p) else Rel4.INC
        glue = dict(self.glue)
        for x, y in product(members(self.lower), members(self.upper)):
            yield x, y, Rel4.LT if glue[x] & glue[y] else Rel4.INC


Step = t.Tuple[int, t.Tuple[WaistCallKey, ...], t.Optional[WaistPartition]]
BackPointer = t.Tuple[t.Optional[WaistPartition], t.Tuple[WaistCallKey, ...]]


class WaistSolver:
    """Memoized solver for one instance and one width parameter."""

    def __init__(self, instance: POTInstance, k: int) -> None:
        if k < 1:
            raise InvalidInstanceError(f"Effective width parameter must be at least 1, got {k}")
        self.instance = instance
        self.k = k
        n = instance.n
        self.allowed = [
            [
                sum(1 << rel.code for rel in instance.allowed(i, j)) if i != j else 0
                for j in range(n)
            ]
            for i in range(n)
        ]
        self.shift = [
            [2 * pair_index(min(i, j), max(i, j), n) if i != j else 0 for j in range(n)]
            for i in range(n)
        ]
        self.counts: t.Dict[WaistCallKey, int] = {}
        self.witnesses: t.Dict[WaistCallKey, BackPointer | None] = {}

    def root(self) -> WaistCallKey:
        everything = (1 << self.instance.n) - 1
        return WaistCallKey(everything, tuple(everything for _ in range(self.instance.n)))

    def admits(self, i: int, j: int, code: int) -> bool:
        return bool((self.allowed[i][j] >> code) & 1)

    def pack(self, i: int, j: int, code: int) -> int:
        """Packed contribution of relation `code` from `i` to `j`."""
        return (code if i < j else CONVERSE_CODE[code]) << self.shift[i][j]

    def all_equal(self, group: t.Sequence[int], precede: t.Dict[int, int]) -> int | None:
        """Packed relations making `group` one equality class, None when not allowed."""
        packed = 0
        for a, b in combinations(group, 2):
            if not (self.admits(a, b, EQ) and (precede[a] >> b) & 1 and (precede[b] >> a) & 1):
                return None
            packed += self.pack(a, b, EQ)
        return packed

    def steps(self, key: WaistCallKey) -> t.Iterator[Step]:
        """Yield `(packed relations, child calls, partition)` for every valid split of `key`.

        The all-equal split comes first, with no child call and no partition.
        """
        ys = members(key.members)
        precede = dict(zip(ys, key.may_precede))
        equal = self.all_equal(ys, precede)
        if equal is not None:
            yield equal, (), None
        if len(ys) < 2:
            return
        for size in range(1, len(ys) + 1):
            for chosen in combinations(ys, size):
                rest = [y for y in ys if y not in chosen]
                for partition in set_partitions(list(chosen), self.k):
                    if len(partition) == 1 and not rest:
                        continue
                    yield from self._glued(precede, list(chosen), partition, rest)

    def canonical_steps(self, key: WaistCallKey) -> t.Iterator[Step]:
        """Yield the one split of `key` that each scenario is counted under.

        A scenario which is not all-equal is split around the smallest member
        `v`: the equality class of `v` is the first waist block and is not
        recursed on, the members incomparable to `v` form the second block, and
        every other member lies below or above the whole class. Any order with
        effective width `k` splits this way, with an empty second block when `k`
        is 1, and the split is read back from the scenario.
        """
        ys = members(key.members)
        precede = dict(zip(ys, key.may_precede))
        equal = self.all_equal(ys, precede)
        if equal is not None:
            yield equal, (), None
        if len(ys) < 2:
            return
        first, others = ys[0], ys[1:]
        for size in range(len(others)):
            for mates in combinations(others, size):
                group = [first, *mates]
                packed = self.all_equal(group, precede)
                if packed is None:
                    continue
                remaining = [y for y in others if y not in mates]
                widest = len(remaining) if self.k > 1 else 0
                for width in range(widest + 1):
                    for side in combinations(remaining, width):
                        rest = [y for y in remaining if y not in side]
                        partition = [group, list(side)] if side else [group]
                        for cross, children, split in self._glued(
                            precede, group + list(side), partition, rest, anchored=True
                        ):
                            yield cross + packed, children, split

    def _glued(
        self,
        precede: t.Dict[int, int],
        waist: t.List[int],
        partition: t.List[t.List[int]],
        rest: t.List[int],
        anchored: bool = False,
    ) -> t.Iterator[Step]:
        # Anchored splits glue every other variable to the whole first block,
        # which is an equality class and gets no child call.
        block_of = {w: index for index, block in enumerate(partition) for w in block}
        cross = 0
        for a, b in combinations(waist, 2):
            if block_of[a] != block_of[b]:
                if not self.admits(a, b, INC):
                    return
                cross += self.pack(a, b, INC)
        position = {w: p for p, w in enumerate(waist)}
        full_blocks = [to_mask(position[w] for w in block) for block in partition]
        anchors = full_blocks[:1] if anchored else full_blocks
        every_position = (1 << len(waist)) - 1

        options: t.List[t.List[t.Tuple[int, int, int]]] = []
        for x in rest:
            choices = []
            for side, glue in product((LOWER, UPPER), range(1, every_position + 1)):
                if not any(glue & block == block for block in anchors):
                    continue
                packed = 0
                for w in waist:
                    if bit(glue, position[w] + 1):
                        if side == LOWER:
                            code = LT
                            fits = (precede[x] >> w) & 1
                        else:
                            code = GT
                            fits = (precede[w] >> x) & 1
                        if not fits:
                            break
                    else:
                        code = INC
                    if not self.admits(x, w, code):
                        break
                    packed += self.pack(x, w, code)
                else:
                    choices.append((side, glue, packed))
            if not choices:
                return
            options.append(choices)

        chosen: t.List[t.Tuple[int, int]] = []

        def assign(index: int, packed: int) -> t.Iterator[Step]:
            if index == len(rest):
                sides = {side for side, _ in chosen}
                if len(partition) + len(sides) >= 2:
                    yield self._close(
                        precede, waist, partition, rest, chosen, cross + packed, anchored
                    )
                return
            x = rest[index]
            for side, glue, contribution in options[index]:
                extra = 0
                for (other_side, other_glue), y in zip(chosen, rest):
                    if other_side == side:
                        continue
                    common = glue & other_glue
                    if common:
                        if not any(common & block == block for block in full_blocks):
                            break
                        low, high = (x, y) if side == LOWER else (y, x)
                        if not (self.admits(low, high, LT) and (precede[low] >> high) & 1):
                            break
                        extra += self.pack(low, high, LT)
                    else:
                        if not self.admits(x, y, INC):
                            break
                        extra += self.pack(x, y, INC)
                else:
                    chosen.append((side, glue))
                    yield from assign(index + 1, packed + contribution + extra)
                    chosen.pop()

        yield from assign(0, 0)

    def _close(
        self,
        precede: t.Dict[int, int],
        waist: t.List[int],
        partition: t.List[t.List[int]],
        rest: t.List[int],
        chosen: t.List[t.Tuple[int, int]],
        packed: int,
        anchored: bool,
    ) -> Step:
        lower = [x for x, (side, _) in zip(rest, chosen) if side == LOWER]
        upper = [x for x, (side, _) in zip(rest, chosen) if side == UPPER]
        glue = dict(zip(rest, (g for _, g in chosen)))
        position = {w: p for p, w in enumerate(waist)}

        def related(x: int, w: int) -> bool:
            return bool(bit(glue[x], position[w] + 1))

        def ordered(x: int, y: int) -> bool:
            return bool(glue[x] & glue[y])

        below: t.Dict[int, int] = {}
        above: t.Dict[int, int] = {}
        for x in lower:
            below[x] = 0
            above[x] = to_mask(w for w in waist if related(x, w)) | to_mask(
                y for y in upper if ordered(x, y)
            )
        for y in upper:
            below[y] = to_mask(w for w in waist if related(y, w)) | to_mask(
                x for x in lower if ordered(x, y)
            )
            above[y] = 0
        for w in waist:
            below[w] = to_mask(x for x in lower if related(x, w))
            above[w] = to_mask(y for y in upper if related(y, w))

        children = []
        recursed = partition[1:] if anchored else partition
        for part in [*recursed, lower, upper]:
            if not part:
                continue
            part_mask = to_mask(part)
            context = []
            for a in part:
                compatible = 0
                for b in part:
                    if (
                        a != b
                        and below[a] & ~below[b] == 0
                        and above[b] & ~above[a] == 0
                    ):
                        compatible |= 1 << b
                context.append(precede[a] & part_mask & compatible)
            children.append(WaistCallKey(part_mask, tuple(context)))
        split = WaistPartition(
            waist=tuple(waist),
            blocks=tuple(to_mask(block) for block in partition),
            lower=to_mask(lower),
            upper=to_mask(upper),
            glue=tuple(sorted(glue.items())),
        )
        return packed, tuple(children), split

    def waist_step(self, key: WaistCallKey) -> int:
        """Number of scenarios realized by the members of `key`."""
        if key in self.counts:
            return self.counts[key]
        total = 0
        for _, children, _ in self.canonical_steps(key):
            ways = 1
            for child in children:
                ways *= self.waist_step(child)
                if not ways:
                    break
            total += ways
        self.counts[key] = total
        return total

    def witness_step(self, key: WaistCallKey) -> bool:
        """Whether the members of `key` admit a scenario, keeping the accepting split."""
        if key in self.witnesses:
            return self.witnesses[key] is not None
        found: BackPointer | None = None
        for _, children, split in self.steps(key):
            if all(self.witness_step(child) for child in children):
                found = (split, children)
                break
        self.witnesses[key] = found
        return found is not None

    def rebuild(self, key: WaistCallKey, relations: t.Dict[t.Tuple[int, int], Rel4]) -> None:
        """Fill `relations` for the members of an accepted `key` from the kept splits."""
        found = self.witnesses.get(key)
        if found is None:
            raise KeyError(f"No accepted split recorded for {key}")
        split, children = found
        if split is None:
            for a, b in combinations(members(key.members), 2):
                relations[(a, b)] = Rel4.EQ
            return
        for a, b, rel in split.relations():
            relations[(a, b)] = rel
        for child in children:
            self.rebuild(child, relations)

    def count(self) -> int:
        if self.instance.has_empty_constraint:
            return 0
        result = self.waist_step(self.root())
        logger.debug(
            "Counted %d scenarios over %d variables at k=%d using %d memo entries",
            result,
            self.instance.n,
            self.k,
            len(self.counts),
        )
        return result

    def witness(self) -> AtomicScenario | None:
        if self.instance.has_empty_constraint:
            return None
        root = self.root()
        accepted = self.witness_step(root)
        logger.debug(
            "Decision over %d variables at k=%d used %d memo entries",
            self.instance.n,
            self.k,
            len(self.witnesses),
        )
        if not accepted:
            return None
        relations: t.Dict[t.Tuple[int, int], Rel4] = {}
        self.rebuild(root, relations)
        return AtomicScenario.from_mapping(self.instance.n, relations)


def pot_decide(instance: POTInstance, k: int) -> bool:
    """Whether some order of effective width `k` satisfies `instance`."""
    return WaistSolver(instance, k).witness() is not None


def pot_count(instance: POTInstance, k: int) -> int:
    """Number of distinct atomic scenarios satisfying `instance` with effective width `k`."""
    return WaistSolver(instance, k).count()


def pot_witness(instance: POTInstance, k: int) -> AtomicScenario | None:
    """An atomic scenario solving `instance` with effective width `k`, or None."""
    return WaistSolver(instance, k).witness()


__all__ = [
    "bit",
    "WaistCallKey",
    "WaistPartition",
    "WaistSolver",
    "pot_decide",
    "pot_count",
    "pot_witness",
]
