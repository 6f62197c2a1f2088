from __future__ import annotations

import typing as t
from itertools import combinations


def popcount(mask: int) -> int:
    """Number of set bits in a non-negative integer."""
    return bin(mask).count("1")


def members(mask: int) -> t.List[int]:
    """Indices of the set bits of `mask`, in ascending order."""
    result: t.List[int] = []
    index = 0
    while mask:
        if mask & 1:
            result.append(index)
        mask >>= 1
        index += 1
    return result


def to_mask(indices: t.Iterable[int]) -> int:
    mask = 0
    for index in indices:
        mask |= 1 << index
    return mask


def submasks(mask: int) -> t.Iterator[int]:
    """Yield every submask of `mask`, the empty one first, then in ascending order."""
    items = members(mask)
    for size in range(len(items) + 1):
        for chosen in combinations(items, size):
            yield to_mask(chosen)


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(i: int, j: int, n: int) -> int:
    """Position of the pair `(i, j)`, `i < j`, in the lexicographic list of pairs over `n` items."""
    if not 0 <= i < j < n:
        raise ValueError(f"Invalid pair ({i}, {j}) for {n} items")
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def pairs(n: int) -> t.List[t.Tuple[int, int]]:
    """All pairs `(i, j)` with `i < j < n`, in lexicographic order."""
    return list(combinations(range(n), 2))


def set_partitions(
    items: t.Sequence[t.Any], max_blocks: int
) -> t.Iterator[t.List[t.List[t.Any]]]:
    """Yield the partitions of `items` into at most `max_blocks` nonempty blocks.

    Blocks are listed in order of their first item, so each unordered partition
    is produced exactly once.
    """
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest, max_blocks):
        if len(partition) < max_blocks:
            yield [[first]] + partition
        for index in range(len(partition)):
            merged = [first] + partition[index]
            yield [merged] + partition[:index] + partition[index + 1 :]
