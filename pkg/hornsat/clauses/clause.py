"""Horn clauses `H && φ -> C` and their renaming."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Set, Tuple

from ..terms.fact import STANDARD_PREDICATES, Fact
from ..terms.formula import TRUE, Formula
from ..terms.term import Var, shift_var


class ClauseKind(str, Enum):
    PROTOCOL = "protocol"
    ATTACKER = "attacker"
    STANDARD = "standard"
    USER = "user"
    DERIVED = "derived"


LISTEN_ORIGIN = "Rl"


@dataclass(frozen=True)
class HornClause:
    hypotheses: Tuple[Fact, ...]
    conclusion: Fact
    formula: Formula = TRUE
    origin: str = field(default="", compare=False)
    kind: ClauseKind = field(default=ClauseKind.DERIVED, compare=False)

    def __str__(self) -> str:
        parts = [str(h) for h in self.hypotheses] + [str(a) for a in self.formula.atoms]
        if not parts:
            return f"-> {self.conclusion}"
        return f"{' && '.join(parts)} -> {self.conclusion}"

    @property
    def is_standard(self) -> bool:
        """Member of C_std: data-constructor construction and projection."""
        return self.kind is ClauseKind.STANDARD

    @property
    def is_listening(self) -> bool:
        return self.origin == LISTEN_ORIGIN

    def iter_vars(self) -> Iterator[Var]:
        yield from self.conclusion.iter_vars()
        for hypothesis in self.hypotheses:
            yield from hypothesis.iter_vars()

    def vars(self) -> Set[Var]:
        found = set(self.iter_vars())
        found |= self.formula.all_vars()
        return found

    def max_index(self) -> int:
        return max((v.index for v in self.vars()), default=-1)

    def apply(self, subst) -> "HornClause":
        if not subst:
            return self
        return HornClause(
            tuple(h.apply(subst) for h in self.hypotheses),
            self.conclusion.apply(subst),
            self.formula.apply(subst),
            self.origin,
            self.kind,
        )

    def rename(self, renaming: Dict[Var, Var]) -> "HornClause":
        """Apply an injective renaming to every variable, bound ones included."""
        return HornClause(
            tuple(h.apply(renaming) for h in self.hypotheses),
            self.conclusion.apply(renaming),
            self.formula.rename(renaming),
            self.origin,
            self.kind,
        )

    def shifted(self, offset: int) -> "HornClause":
        if offset == 0:
            return self
        return self.rename({v: shift_var(v, offset) for v in self.vars()})

    def renamed_apart(self, other_max_index: int) -> "HornClause":
        """A variant whose variables all have indices above `other_max_index`."""
        return self.shifted(other_max_index + 1)

    def canonical(self) -> "HornClause":
        """Variant with variables renumbered in order of first occurrence."""
        renaming = canonical_renaming(self.iter_vars(), self.formula)
        return self.rename(renaming)

    def with_origin(self, origin: str, kind: ClauseKind) -> "HornClause":
        return HornClause(self.hypotheses, self.conclusion, self.formula, origin, kind)

    def is_consistent(self) -> bool:
        """Consistency with F_p.

        A blocking conclusion has no hypotheses; a user-predicate conclusion
        only depends on user-predicate or blocking facts.
        """
        head = self.conclusion
        if head.blocked:
            return not self.hypotheses
        if head.predicate in STANDARD_PREDICATES:
            return True
        return all(h.blocked or h.predicate not in STANDARD_PREDICATES for h in self.hypotheses)


def canonical_renaming(variables: Iterable[Var], formula: Formula = TRUE) -> Dict[Var, Var]:
    counters: Dict[str, int] = {}
    renaming: Dict[Var, Var] = {}

    def visit(var: Var) -> None:
        if var in renaming:
            return
        base = var.name.lstrip("~") or "v"
        index = counters.get(base, 0)
        counters[base] = index + 1
        renaming[var] = Var(base, index, var.sort)

    for var in variables:
        visit(var)
    for var in sorted(formula.free_vars(), key=lambda v: (v.name, v.index)):
        visit(var)
    for var in sorted(formula.all_vars(), key=lambda v: (v.name, v.index)):
        visit(var)
    return renaming


def fingerprint(clause: HornClause) -> Tuple:
    """Hashable key equal for clauses that are variants with identical layout."""
    canonical = clause.canonical()
    return (canonical.hypotheses, canonical.conclusion, canonical.formula)


def dedupe(clauses: Iterable[HornClause]) -> List[HornClause]:
    seen: Set[Tuple] = set()
    result: List[HornClause] = []
    for clause in clauses:
        key = fingerprint(clause)
        if key not in seen:
            seen.add(key)
            result.append(clause)
    return result
