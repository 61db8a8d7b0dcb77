"""Facts: predicate atoms over terms, with their blocking counterparts."""

from dataclasses import dataclass
from typing import Iterator, Set, Tuple

from .term import Substitution, Term, Var, apply_subst, depth, iter_vars

ATTACKER = "attacker"
MESSAGE = "mess"
EVENT = "event"

STANDARD_PREDICATES = frozenset({ATTACKER, MESSAGE, EVENT})


@dataclass(frozen=True)
class Fact:
    """An atom `p(M1, ..., Mn)`.

    `blocked` marks the blocking counterpart b-p. A blocked event is a
    sure-event; an unblocked event is the event fact found in conclusions.
    """

    predicate: str
    args: Tuple[Term, ...]
    blocked: bool = False

    def __str__(self) -> str:
        name = self.predicate
        if self.blocked:
            name = "s-event" if self.predicate == EVENT else f"b-{self.predicate}"
        return f"{name}({', '.join(str(a) for a in self.args)})"

    @property
    def is_standard(self) -> bool:
        return self.predicate in STANDARD_PREDICATES

    def apply(self, subst: Substitution) -> "Fact":
        if not subst:
            return self
        return Fact(self.predicate, tuple(apply_subst(subst, a) for a in self.args), self.blocked)

    def to_blocking(self) -> "Fact":
        """⌈F⌉ᵇ: the blocking form of the fact."""
        if self.blocked:
            return self
        return Fact(self.predicate, self.args, True)

    def to_plain(self) -> "Fact":
        if not self.blocked:
            return self
        return Fact(self.predicate, self.args, False)

    def same_modulo_blocking(self, other: "Fact") -> bool:
        return self.predicate == other.predicate and self.args == other.args

    def iter_vars(self) -> Iterator[Var]:
        for arg in self.args:
            yield from iter_vars(arg)

    def vars(self) -> Set[Var]:
        return set(self.iter_vars())

    @property
    def depth(self) -> int:
        return max((depth(a) for a in self.args), default=0)


def attacker(term: Term, blocked: bool = False) -> Fact:
    return Fact(ATTACKER, (term,), blocked)


def message(channel: Term, payload: Term, blocked: bool = False) -> Fact:
    return Fact(MESSAGE, (channel, payload), blocked)


def event(atom: Term, sure: bool = False) -> Fact:
    """Event fact; `sure=True` gives the sure-event used in hypotheses."""
    return Fact(EVENT, (atom,), sure)
