"""Selection function with automatic loop avoidance."""

import logging
from typing import List, Optional, Sequence

from ..clauses.clause import HornClause, canonical_renaming
from ..terms.fact import ATTACKER, Fact
from ..terms.term import Var
from ..terms.unify import match_fact

logger = logging.getLogger(__name__)


def never_selectable(fact: Fact) -> bool:
    """Blocking facts, sure-events and att(x) with x a variable."""
    if fact.blocked:
        return True
    return fact.predicate == ATTACKER and isinstance(fact.args[0], Var)


def _generalizes(pattern: Fact, fact: Fact) -> bool:
    return match_fact(pattern, fact) is not None


class SelectionFunction:
    """Chooses at most one hypothesis to resolve upon.

    Besides the hard constraints, a hypothesis F is avoided when the clause
    conclusion is an instance of F, and every clause exhibiting such a loop
    teaches a pattern: instances of a learned pattern are never selected
    anywhere. Patterns whose arguments are all variables are not learned.
    """

    def __init__(self) -> None:
        self.loop_patterns: List[Fact] = []

    def covered(self, fact: Fact) -> bool:
        return any(_generalizes(p, fact) for p in self.loop_patterns)

    def learn(self, clause: HornClause) -> bool:
        """Record the loop patterns shown by `clause`; True when a new one appeared."""
        learned = False
        for hypothesis in clause.hypotheses:
            if never_selectable(hypothesis):
                continue
            if all(isinstance(a, Var) for a in hypothesis.args):
                continue
            if not _generalizes(hypothesis, clause.conclusion):
                continue
            if self.covered(hypothesis):
                continue
            pattern = hypothesis.apply(canonical_renaming(hypothesis.iter_vars()))
            self.loop_patterns = [p for p in self.loop_patterns if not _generalizes(pattern, p)]
            self.loop_patterns.append(pattern)
            logger.debug("Loop pattern %s learned from %s", pattern, clause)
            learned = True
        return learned

    def candidates(self, clause: HornClause) -> List[int]:
        found = []
        for position, hypothesis in enumerate(clause.hypotheses):
            if never_selectable(hypothesis):
                continue
            if _generalizes(hypothesis, clause.conclusion):
                continue
            if self.covered(hypothesis):
                continue
            found.append(position)
        return found

    def select(self, clause: HornClause) -> Optional[int]:
        """Index of the selected hypothesis, or None when the clause is solved."""
        return deepest(clause.hypotheses, self.candidates(clause))


def deepest(facts: Sequence[Fact], positions: Sequence[int]) -> Optional[int]:
    """The most instantiated fact among `positions`; ties go to the last one."""
    best: Optional[int] = None
    best_depth = -1
    for position in positions:
        current = facts[position].depth
        if current >= best_depth:
            best, best_depth = position, current
    return best
