"""Ordering functions: how a hypothesis is placed in time against the query premise."""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..saturation.context import SaturationContext
from ..terms.fact import Fact


class Relation(str, Enum):
    LESS = "<"
    LEQ = "<="


@dataclass(frozen=True)
class OrderingFunction:
    """Partial map from 1-based premise positions to `<` or `<=`."""

    entries: FrozenSet[Tuple[int, Relation]] = frozenset()

    @classmethod
    def of(cls, mapping: Dict[int, Relation]) -> "OrderingFunction":
        return cls(frozenset(mapping.items()))

    @classmethod
    def at(cls, position: int, relation: Relation = Relation.LEQ) -> "OrderingFunction":
        return cls(frozenset({(position, relation)}))

    def as_dict(self) -> Dict[int, Relation]:
        return dict(self.entries)

    @property
    def domain(self) -> FrozenSet[int]:
        return frozenset(i for i, _ in self.entries)

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def get(self, position: int) -> Optional[Relation]:
        return self.as_dict().get(position)

    def strict(self) -> "OrderingFunction":
        return OrderingFunction(frozenset((i, Relation.LESS) for i in self.domain))

    def restricted(self, low: int, high: int) -> "OrderingFunction":
        return OrderingFunction(frozenset((i, r) for i, r in self.entries if low <= i <= high))

    def __str__(self) -> str:
        inner = ", ".join(f"{i}{r.value}" for i, r in sorted(self.entries))
        return "{" + inner + "}"


EMPTY = OrderingFunction()


def delta_res(
    fact: Fact, conclusion: Fact, delta: OrderingFunction, context: SaturationContext
) -> OrderingFunction:
    """Ordering function given to hypothesis `fact` of a saturated clause with
    conclusion `conclusion`, when resolved into a hypothesis ordered by `delta`."""
    if fact.blocked and context.is_user(fact):
        return EMPTY
    if context.is_clause_defined(fact) and not context.is_clause_defined(conclusion):
        return EMPTY
    if context.in_ordered(fact):
        return delta.strict()
    return delta


def added_delta(matched: Iterable[OrderingFunction]) -> OrderingFunction:
    """Ordering function of a standard fact added by a lemma.

    Positions shared by every matched premise, `<` only where all of them
    are strict there; empty when nothing was matched.
    """
    matched = list(matched)
    if not matched:
        return EMPTY
    common = set(matched[0].domain)
    for delta in matched[1:]:
        common &= delta.domain
    mapping = {}
    for position in common:
        strict = all(d.get(position) is Relation.LESS for d in matched)
        mapping[position] = Relation.LESS if strict else Relation.LEQ
    return OrderingFunction.of(mapping)


def _assignments(
    deltas: Sequence[OrderingFunction], low: int, high: int
) -> Iterable[List[int]]:
    """Injective choices of j_k in [low, high] with δ_k(j_k) defined."""
    chosen: List[int] = []

    def search(k: int):
        if k == len(deltas):
            yield list(chosen)
            return
        for position in sorted(deltas[k].domain):
            if position < low or position > high or position in chosen:
                continue
            chosen.append(position)
            yield from search(k + 1)
            chosen.pop()

    yield from search(0)


class Strictness(str, Enum):
    STRICT = "strict"
    EQUAL = "equal"
    NEITHER = "neither"


def check_equal_strict(
    deltas: Sequence[OrderingFunction], low: int, high: int, targets: Sequence[int]
) -> Strictness:
    """Classify δ1..δm against positions low..high for the targets j1..jm."""
    deltas = [d.restricted(low, high) for d in deltas]
    m = len(deltas)
    equal = (
        m <= high - low + 1
        and len(targets) == m
        and len(set(targets)) == m
        and all(low <= j <= high and d.get(j) is not None for d, j in zip(deltas, targets))
    )
    if low <= high:
        if all(Relation.LESS in {r for _, r in d.entries} for d in deltas):
            return Strictness.STRICT
        if equal and (m <= high - low or any(d.get(j) is Relation.LESS for d, j in zip(deltas, targets))):
            return Strictness.STRICT
    return Strictness.EQUAL if equal else Strictness.NEITHER


def is_equal(deltas: Sequence[OrderingFunction], low: int, high: int) -> bool:
    return any(
        check_equal_strict(deltas, low, high, choice) is not Strictness.NEITHER
        for choice in _assignments(deltas, low, high)
    )


def is_strict(deltas: Sequence[OrderingFunction], low: int, high: int) -> bool:
    return any(
        check_equal_strict(deltas, low, high, choice) is Strictness.STRICT
        for choice in _assignments(deltas, low, high)
    ) or check_equal_strict(deltas, low, high, ()) is Strictness.STRICT


def is_strict_for(
    deltas: Sequence[OrderingFunction], clause_idx: int, clause_size: int, lemma_idx: int
) -> bool:
    """Whether applying an inductive lemma with these matched ordering
    functions stays below the current conclusion in the induction order."""
    standard = list(deltas[: lemma_idx - 1])
    user = list(deltas[lemma_idx - 1:])
    if is_strict(standard, 1, clause_idx - 1):
        return True
    return is_equal(standard, 1, clause_idx - 1) and is_strict(user, clause_idx, clause_size)
