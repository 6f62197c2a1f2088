from __future__ import annotations

import typing as t
from enum import Enum


class Rel4(str, Enum):
    """Relations induced by a partial order between two of its elements."""

    LT = "lt"
    """Strictly less: `a <= b` holds but `b <= a` does not."""

    GT = "gt"
    """Strictly greater: the converse of `LT`."""

    EQ = "eq"
    """Equal: both `a <= b` and `b <= a` hold, i.e. `a` and `b` are the same element."""

    INC = "inc"
    """Incomparable: neither `a <= b` nor `b <= a` holds."""

    @property
    def converse(self) -> Rel4:
        return _REL4_CONVERSE[self]

    @property
    def code(self) -> int:
        """Position of the relation in `REL4`, used by packed encodings."""
        return _REL4_CODE[self]


REL4: t.Tuple[Rel4, ...] = (Rel4.LT, Rel4.GT, Rel4.EQ, Rel4.INC)
"""All four relations, in the order used for enumeration and packing."""

_REL4_CONVERSE = {
    Rel4.LT: Rel4.GT,
    Rel4.GT: Rel4.LT,
    Rel4.EQ: Rel4.EQ,
    Rel4.INC: Rel4.INC,
}
_REL4_CODE = {rel: index for index, rel in enumerate(REL4)}


class BasicRel(str, Enum):
    """The 13 basic relations of Allen's interval algebra, for an interval `x` against `y`."""

    P = "p"
    """`x` precedes `y`."""

    PI = "pi"
    """`x` is preceded by `y`."""

    M = "m"
    """`x` meets `y`: the end of `x` is the start of `y`."""

    MI = "mi"
    """`x` is met by `y`."""

    O = "o"  # noqa: E741
    """`x` overlaps with `y`."""

    OI = "oi"
    """`x` is overlapped by `y`."""

    S = "s"
    """`x` starts `y`."""

    SI = "si"
    """`x` is started by `y`."""

    D = "d"
    """`x` happens during `y`."""

    DI = "di"
    """`x` contains `y`."""

    F = "f"
    """`x` finishes `y`."""

    FI = "fi"
    """`x` is finished by `y`."""

    E = "e"
    """`x` is equal to `y`."""

    @property
    def converse(self) -> BasicRel:
        return _BASIC_CONVERSE[self]


BASIC_RELATIONS: t.Tuple[BasicRel, ...] = tuple(BasicRel)
"""All 13 basic relations, in declaration order."""

_BASIC_CONVERSE = {
    BasicRel.P: BasicRel.PI,
    BasicRel.PI: BasicRel.P,
    BasicRel.M: BasicRel.MI,
    BasicRel.MI: BasicRel.M,
    BasicRel.O: BasicRel.OI,
    BasicRel.OI: BasicRel.O,
    BasicRel.S: BasicRel.SI,
    BasicRel.SI: BasicRel.S,
    BasicRel.D: BasicRel.DI,
    BasicRel.DI: BasicRel.D,
    BasicRel.F: BasicRel.FI,
    BasicRel.FI: BasicRel.F,
    BasicRel.E: BasicRel.E,
}


class Endpoint(t.NamedTuple):
    """A start-point (`x-`) or an end-point (`x+`) of interval `interval`."""

    interval: int
    is_end: bool

    def __str__(self) -> str:
        return f"{self.interval}{'+' if self.is_end else '-'}"


class Problem(str, Enum):
    """Problem families handled by the command line and the benchmark harness."""

    POT = "pot"
    IA = "ia"
    CSP = "csp"


def oriented(
    i: int, j: int, relations: t.AbstractSet[t.Any], converse: t.Callable[[t.Any], t.Any]
) -> t.Tuple[int, int, t.FrozenSet[t.Any]]:
    """Return `(min, max, relations)` with the relation set converted to the stored orientation."""
    if i < j:
        return i, j, frozenset(relations)
    return j, i, frozenset(converse(rel) for rel in relations)
