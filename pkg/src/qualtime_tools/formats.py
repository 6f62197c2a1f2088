"""Text formats for instances and orders.

Every format starts with a header line `<kind> <n>` where kind is one of `pot`,
`ia`, `csp` or `poset`. Blank lines and lines starting with `#` are ignored.

- `pot` and `ia`: lines `c <i> <j> <relations>` where relations are tokens joined
  with `|`, for example `c 0 1 lt|inc` or `c 0 1 m|o`. A line with `i > j` is
  read as the converse constraint, repeated pairs intersect.
- `csp`: an optional line `dom <v> ...` declaring the domain, then blocks
  `rel <arity> <v1> ... <v_arity> <tuple_count>` followed by `tuple_count` lines
  of `arity` integers.
- `poset`: lines `le <i> <j>`, closed reflexively and transitively on load.
"""
from __future__ import annotations

import typing as t
from pathlib import Path

from .csp import Constraint, CSPInstance
from .errors import EmptyConstraint, InvalidInstanceError, ParseError
from .interval import IAInstance
from .order import AtomicScenario, PartialOrder, POTInstance, make_partial_order
from .types import BASIC_RELATIONS, REL4, BasicRel, Rel4, oriented

Instance = t.Union[POTInstance, IAInstance, CSPInstance, PartialOrder]
Relation = t.Union[Rel4, BasicRel]

HEADERS = ("pot", "ia", "csp", "poset")


def format_relations(relations: t.Iterable[Relation]) -> str:
    """Join relation tokens with `|`, in declaration order."""
    chosen = set(relations)
    order: t.Sequence[Relation] = REL4 if all(isinstance(r, Rel4) for r in chosen) else BASIC_RELATIONS
    return "|".join(relation.value for relation in order if relation in chosen)


def _lines(text: str) -> t.Iterator[t.Tuple[int, t.List[str]]]:
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield number, stripped.split()


def _integer(token: str, number: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"Expected an integer {what}, got {token!r}", line=number)


def _variable(token: str, n: int, number: int) -> int:
    value = _integer(token, number, "index")
    if not 0 <= value < n:
        raise ParseError(f"Index {value} is outside 0..{n - 1}", line=number)
    return value


def parse(source: t.Union[str, Path, t.TextIO]) -> Instance:
    """Parse an instance from a file path or an open text stream.

    Raises:
        ParseError: When the content does not follow its declared format.
        EmptyConstraint: When repeated constraint lines leave a pair with no relation.
    """
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source.read()
    return parse_text(text)


def parse_text(text: str) -> Instance:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("Missing header line")
    number, header = lines[0]
    if len(header) != 2 or header[0] not in HEADERS:
        raise ParseError(
            f"Header must be '<kind> <n>' with kind in {', '.join(HEADERS)}", line=number
        )
    n = _integer(header[1], number, "size")
    if n < 0:
        raise ParseError(f"Size must be non-negative, got {n}", line=number)
    body = lines[1:]
    try:
        if header[0] == "pot":
            return _parse_relational(n, body, POTInstance, Rel4)
        if header[0] == "ia":
            return _parse_relational(n, body, IAInstance, BasicRel)
        if header[0] == "csp":
            return _parse_csp(n, body)
        return _parse_poset(n, body)
    except InvalidInstanceError as exc:
        raise ParseError(str(exc)) from exc


def _parse_relational(
    n: int,
    body: t.List[t.Tuple[int, t.List[str]]],
    kind: t.Callable[..., t.Any],
    relation_type: t.Callable[[str], Relation],
) -> Instance:
    constraints: t.Dict[t.Tuple[int, int], t.FrozenSet[Relation]] = {}
    empty_at = 0
    for number, tokens in body:
        if tokens[0] != "c" or len(tokens) != 4:
            raise ParseError("Expected 'c <i> <j> <relations>'", line=number)
        i = _variable(tokens[1], n, number)
        j = _variable(tokens[2], n, number)
        if i == j:
            raise ParseError(f"Constraint relates {i} to itself", line=number)
        try:
            relations = {relation_type(token) for token in tokens[3].split("|")}
        except ValueError:
            raise ParseError(f"Unknown relation in {tokens[3]!r}", line=number)
        a, b, stored = oriented(i, j, relations, lambda rel: rel.converse)
        merged = constraints[(a, b)] & stored if (a, b) in constraints else stored
        if not merged and not empty_at:
            empty_at = number
        constraints[(a, b)] = merged
    instance = kind(n, constraints)
    if empty_at:
        raise EmptyConstraint(
            "Repeated constraints leave no relation", instance=instance, line=empty_at
        )
    return t.cast(Instance, instance)


def _parse_csp(n: int, body: t.List[t.Tuple[int, t.List[str]]]) -> CSPInstance:
    domain: t.FrozenSet[int] | None = None
    constraints: t.List[Constraint] = []
    index = 0
    while index < len(body):
        number, tokens = body[index]
        index += 1
        if tokens[0] == "dom":
            domain = frozenset(_integer(token, number, "value") for token in tokens[1:])
            continue
        if tokens[0] != "rel" or len(tokens) < 3:
            raise ParseError("Expected 'rel <arity> <scope...> <tuple_count>'", line=number)
        arity = _integer(tokens[1], number, "arity")
        if arity < 1 or len(tokens) != arity + 3:
            raise ParseError(f"Expected {max(arity, 1)} scope variables and a tuple count", line=number)
        scope = tuple(_variable(token, n, number) for token in tokens[2 : 2 + arity])
        count = _integer(tokens[-1], number, "tuple count")
        if count < 0 or index + count > len(body):
            raise ParseError(f"Expected {count} tuple lines", line=number)
        rows = []
        for row_number, row in body[index : index + count]:
            if len(row) != arity:
                raise ParseError(f"Expected {arity} values", line=row_number)
            rows.append(tuple(_integer(token, row_number, "value") for token in row))
        index += count
        constraints.append(Constraint(scope, frozenset(rows)))
    return CSPInstance(n, tuple(constraints), domain)


def _parse_poset(n: int, body: t.List[t.Tuple[int, t.List[str]]]) -> PartialOrder:
    pairs = []
    for number, tokens in body:
        if tokens[0] != "le" or len(tokens) != 3:
            raise ParseError("Expected 'le <i> <j>'", line=number)
        pairs.append((_variable(tokens[1], n, number), _variable(tokens[2], n, number)))
    return make_partial_order(range(n), pairs)


def serialize(instance: Instance) -> str:
    """Write an instance in its text format. Parsing the result gives back an equal instance."""
    if isinstance(instance, (POTInstance, IAInstance)):
        kind = "pot" if isinstance(instance, POTInstance) else "ia"
        lines = [f"{kind} {instance.n}"]
        for (i, j), relations in instance.constraints.items():
            if not relations:
                raise InvalidInstanceError(f"Constraint on ({i}, {j}) has no relation to write")
            lines.append(f"c {i} {j} {format_relations(relations)}")
    elif isinstance(instance, CSPInstance):
        lines = [f"csp {instance.n}"]
        if instance.domain is not None:
            lines.append("dom " + " ".join(str(value) for value in sorted(instance.domain)))
        for constraint in instance.constraints:
            scope = " ".join(str(variable) for variable in constraint.scope)
            lines.append(f"rel {constraint.arity} {scope} {len(constraint.relation)}")
            lines.extend(" ".join(str(v) for v in row) for row in sorted(constraint.relation))
    else:
        lines = [f"poset {len(instance)}"]
        for a, b in instance.cover_pairs():
            lines.append(f"le {instance.position(a)} {instance.position(b)}")
    return "\n".join(lines) + "\n"


def scenario_lines(scenario: AtomicScenario) -> t.List[str]:
    """Witness lines `r <i> <j> <relation>` for every pair of a scenario."""
    return [f"r {i} {j} {rel.value}" for i, j, rel in scenario.items()]


def assignment_lines(assignment: t.Mapping[int, int]) -> t.List[str]:
    return [f"v {variable} {assignment[variable]}" for variable in sorted(assignment)]
