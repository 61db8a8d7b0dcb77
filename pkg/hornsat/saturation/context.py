"""Predicate classes and lemma sets shared by both saturation phases."""

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Optional, Tuple

from ..language.ast import Specification, Statement
from ..terms.fact import EVENT, Fact
from ..utils.config import EngineSettings


@dataclass(frozen=True)
class SaturationContext:
    """Everything the transformation rules consult besides the clause itself.

    Attributes:
        clause_defined: F_p, predicates whose semantics is given by user clauses
        declared_blocking: F_ap, predicates declared blocking
        ordered_predicates: S_p
        lemmas: proved lemmas and axioms
        inductive: inductive lemmas
    """

    clause_defined: FrozenSet[str] = frozenset()
    declared_blocking: FrozenSet[str] = frozenset()
    ordered_predicates: FrozenSet[str] = frozenset({EVENT})
    lemmas: Tuple[Statement, ...] = ()
    inductive: Tuple[Statement, ...] = ()
    settings: EngineSettings = field(default_factory=EngineSettings)

    @classmethod
    def from_specification(
        cls,
        spec: Specification,
        lemmas: Iterable[Statement] = (),
        inductive: Iterable[Statement] = (),
        settings: Optional[EngineSettings] = None,
    ) -> "SaturationContext":
        lemmas = tuple(lemmas)
        inductive = tuple(inductive)
        declared_blocking = frozenset(spec.declared_blocking)
        ordered = {EVENT} | set(declared_blocking)
        for statement in list(spec.statements) + list(lemmas) + list(inductive):
            ordered.update(f.predicate for f in statement.premise)
            for disjunct in statement.conclusion:
                ordered.update(f.predicate for f in disjunct.facts)
        return cls(
            clause_defined=frozenset(spec.clause_defined),
            declared_blocking=declared_blocking,
            ordered_predicates=frozenset(ordered),
            lemmas=lemmas,
            inductive=inductive,
            settings=settings or EngineSettings(),
        )

    def with_lemmas(
        self, lemmas: Iterable[Statement], inductive: Iterable[Statement] = ()
    ) -> "SaturationContext":
        return SaturationContext(
            self.clause_defined,
            self.declared_blocking,
            self.ordered_predicates,
            tuple(lemmas),
            tuple(inductive),
            self.settings,
        )

    def is_clause_defined(self, fact: Fact) -> bool:
        return fact.predicate in self.clause_defined

    def is_user(self, fact: Fact) -> bool:
        return fact.predicate in self.clause_defined or fact.predicate in self.declared_blocking

    def in_ordered(self, fact: Fact) -> bool:
        """Membership in S_p; blocking forms of user predicates always count."""
        if fact.blocked and self.is_user(fact):
            return True
        return fact.predicate in self.ordered_predicates
