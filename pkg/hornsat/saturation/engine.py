"""First saturation phase: resolution to a fixpoint under the selection function."""

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import count
from typing import Deque, Dict, Iterable, List, Optional, Tuple

from ..clauses import attacker_clauses, instrument, translate, user_clauses
from ..clauses.clause import ClauseKind, HornClause
from ..errors import ResourceLimitExceeded
from ..language.ast import Specification
from ..terms.fact import Fact
from ..terms.unify import mgu
from .context import SaturationContext
from .lemmas import LemmaApplier
from .selection import SelectionFunction
from .simplify import simplify
from .subsumption import subsumes

logger = logging.getLogger(__name__)

RESOLVENT_SUFFIX = "/res"


def initial_clauses(spec: Specification) -> List[HornClause]:
    """C_I: protocol clauses, attacker clauses and user clauses."""
    protocol = translate(instrument(spec.process), spec)
    return protocol + attacker_clauses(spec) + user_clauses(spec)


def _derived_origin(origin: str) -> str:
    if origin.endswith(RESOLVENT_SUFFIX):
        return origin
    return origin + RESOLVENT_SUFFIX


def resolve(solved: HornClause, target: HornClause, position: int) -> Optional[HornClause]:
    """Resolve the conclusion of `solved` with hypothesis `position` of `target`."""
    renamed = solved.renamed_apart(target.max_index())
    selected = target.hypotheses[position]
    subst = mgu(renamed.conclusion, selected)
    if subst is None:
        return None
    hypotheses = target.hypotheses[:position] + renamed.hypotheses + target.hypotheses[position + 1:]
    return HornClause(
        tuple(h.apply(subst) for h in hypotheses),
        target.conclusion.apply(subst),
        (renamed.formula & target.formula).apply(subst),
        _derived_origin(target.origin),
        ClauseKind.DERIVED,
    )


@dataclass
class SaturationResult:
    """Outcome of the first phase.

    Attributes:
        clauses: C_sat, the clauses whose selection is empty
        steps: clauses taken from the queue
        generated: resolvents produced
        loop_patterns: facts the selection function learned to avoid
        lemma_applications: successful lemma applications
    """

    clauses: List[HornClause]
    steps: int = 0
    generated: int = 0
    loop_patterns: List[Fact] = field(default_factory=list)
    lemma_applications: int = 0

    def concluding(self, predicate: str) -> List[HornClause]:
        return [c for c in self.clauses if c.conclusion.predicate == predicate]


class SaturationEngine:
    """Saturates a clause set.

    Solved clauses are resolved into the selected hypothesis of unsolved
    ones; a clause subsumed by a stored one is dropped and stored clauses
    subsumed by a new one are removed. When the selection function learns a
    loop pattern, unsolved clauses are reselected.
    """

    def __init__(self, context: SaturationContext):
        self.context = context
        self.selection = SelectionFunction()
        self.lemmas = LemmaApplier(context)
        self.solved: Dict[int, HornClause] = {}
        self.unsolved: Dict[int, Tuple[HornClause, int]] = {}
        self.queue: Deque[HornClause] = deque()
        self._ids = count()
        self.steps = 0
        self.generated = 0

    def run(self, clauses: Iterable[HornClause]) -> SaturationResult:
        settings = self.context.settings
        self.queue.extend(clauses)
        while self.queue:
            self.steps += 1
            if self.steps > settings.max_steps:
                raise ResourceLimitExceeded(
                    f"saturation exceeded {settings.max_steps} steps",
                    len(self.solved) + len(self.unsolved),
                    self.steps,
                )
            for clause in self._normal_forms(self.queue.popleft()):
                self._insert(clause)
            if len(self.solved) + len(self.unsolved) > settings.max_clauses:
                raise ResourceLimitExceeded(
                    f"saturation exceeded {settings.max_clauses} clauses",
                    len(self.solved) + len(self.unsolved),
                    self.steps,
                )
        logger.info(
            "Saturation finished: %d solved clauses, %d steps, %d resolvents",
            len(self.solved),
            self.steps,
            self.generated,
        )
        return SaturationResult(
            list(self.solved.values()),
            self.steps,
            self.generated,
            list(self.selection.loop_patterns),
            self.lemmas.applications,
        )

    def _normal_forms(self, clause: HornClause) -> List[HornClause]:
        result = []
        for simplified in simplify(clause, self.context):
            for extended in self.lemmas.apply(simplified):
                if extended is simplified:
                    result.append(simplified.canonical())
                    continue
                result.extend(c.canonical() for c in simplify(extended, self.context))
        return result

    def _stored(self) -> Iterable[Tuple[int, HornClause]]:
        yield from self.solved.items()
        for key, (clause, _) in self.unsolved.items():
            yield key, clause

    def _insert(self, clause: HornClause) -> None:
        for _, stored in self._stored():
            if subsumes(stored, clause):
                return
        for key, stored in list(self._stored()):
            if subsumes(clause, stored):
                self.solved.pop(key, None)
                self.unsolved.pop(key, None)
        if self.selection.learn(clause):
            self._reselect()
        key = next(self._ids)
        selected = self.selection.select(clause)
        if selected is None:
            self._add_solved(key, clause)
        else:
            self._add_unsolved(key, clause, selected)

    def _add_solved(self, key: int, clause: HornClause) -> None:
        self.solved[key] = clause
        for target, position in list(self.unsolved.values()):
            self._enqueue(resolve(clause, target, position))

    def _add_unsolved(self, key: int, clause: HornClause, position: int) -> None:
        self.unsolved[key] = (clause, position)
        for solved in list(self.solved.values()):
            self._enqueue(resolve(solved, clause, position))

    def _reselect(self) -> None:
        for key, (clause, position) in list(self.unsolved.items()):
            selected = self.selection.select(clause)
            if selected == position:
                continue
            del self.unsolved[key]
            if selected is None:
                self._add_solved(key, clause)
            else:
                self._add_unsolved(key, clause, selected)

    def _enqueue(self, resolvent: Optional[HornClause]) -> None:
        if resolvent is not None:
            self.generated += 1
            self.queue.append(resolvent)


def saturate(
    spec: Specification,
    context: Optional[SaturationContext] = None,
    clauses: Optional[Iterable[HornClause]] = None,
) -> SaturationResult:
    """Run the first phase on the clauses of `spec` (or on `clauses` when given)."""
    context = context or SaturationContext.from_specification(spec)
    initial = list(clauses) if clauses is not None else initial_clauses(spec)
    logger.debug("Saturating %d initial clauses", len(initial))
    return SaturationEngine(context).run(initial)
