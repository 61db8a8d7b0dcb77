"""Derivation trees and their validation."""

from dataclasses import dataclass, field
from typing import Iterable, Tuple

from ..clauses.clause import HornClause
from ..saturation.subsumption import subsumes
from ..terms.fact import Fact
from ..terms.formula import normalize
from ..terms.term import Substitution, is_ground


@dataclass(frozen=True)
class Derivation:
    """A node labelled by a clause and a substitution, with one child per hypothesis."""

    clause: HornClause
    subst: Tuple[Tuple[object, object], ...] = ()
    children: Tuple["Derivation", ...] = field(default=())

    @classmethod
    def of(cls, clause: HornClause, subst: Substitution, children=()) -> "Derivation":
        return cls(clause, tuple(subst.items()), tuple(children))

    @property
    def substitution(self) -> Substitution:
        return dict(self.subst)

    @property
    def fact(self) -> Fact:
        return self.clause.conclusion.apply(self.substitution)

    @property
    def size(self) -> int:
        return 1 + sum(child.size for child in self.children)


def _ground_fact(fact: Fact) -> bool:
    return all(is_ground(a) for a in fact.args)


def _node_valid(node: Derivation) -> bool:
    subst = node.substitution
    instance = node.clause.apply(subst)
    if not _ground_fact(instance.conclusion):
        return False
    if len(node.children) != len(instance.hypotheses):
        return False
    for child, hypothesis in zip(node.children, instance.hypotheses):
        if child.fact != hypothesis:
            return False
    if instance.formula.is_true:
        return True
    solved = normalize(instance.formula)
    return solved is not None and not solved[0] and solved[1].is_true


def check_derivation(derivation: Derivation, clauses: Iterable[HornClause]) -> bool:
    """True when every node is a ground instance of a clause subsumed by one of `clauses`."""
    clauses = list(clauses)
    stack = [derivation]
    while stack:
        node = stack.pop()
        if not _node_valid(node):
            return False
        if not any(node.clause == c or subsumes(c, node.clause) for c in clauses):
            return False
        stack.extend(node.children)
    return True
