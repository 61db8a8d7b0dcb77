"""Second phase: ordered clauses derived from a statement premise.

The query clause `F1 && ... && Fn -> F1 ⋏ ... ⋏ Fn` is resolved against the
saturated clause set until no hypothesis is selectable; hypotheses carry an
ordering function relating them to the premise positions.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Deque, Iterator, List, Optional, Sequence, Set, Tuple

from ..clauses.clause import HornClause, canonical_renaming
from ..errors import ResourceLimitExceeded
from ..language.ast import Statement
from ..saturation.context import SaturationContext
from ..saturation.engine import SaturationResult
from ..saturation.lemmas import disjunct_present, existential_vars, rename_statement
from ..saturation.selection import SelectionFunction, deepest, never_selectable
from ..terms.fact import ATTACKER, Fact
from ..terms.formula import TRUE, Formula, normalize
from ..terms.term import FreshVariables, Substitution, Var
from ..terms.unify import match_sequences, mgu
from .ordering import EMPTY, OrderingFunction, Relation, added_delta, delta_res, is_strict_for

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrderedFact:
    fact: Fact
    delta: OrderingFunction = EMPTY
    generation: int = 0

    def apply(self, subst: Substitution) -> "OrderedFact":
        return OrderedFact(self.fact.apply(subst), self.delta, self.generation)

    def __str__(self) -> str:
        return f"{self.fact}^{self.delta}" if not self.delta.is_empty else str(self.fact)


@dataclass(frozen=True)
class OrderedClause:
    """`H && φ -> C1 ⋏ ... ⋏ Cn` with ordered hypotheses.

    `idx` is the first premise position holding a user predicate; `history`
    records the rules that produced the clause.
    """

    hypotheses: Tuple[OrderedFact, ...]
    formula: Formula
    conclusion: Tuple[Fact, ...]
    idx: int
    history: Tuple[str, ...] = field(default=(), compare=False)

    @property
    def facts(self) -> List[Fact]:
        return [h.fact for h in self.hypotheses]

    def vars(self) -> Set[Var]:
        found: Set[Var] = set()
        for fact in self.facts + list(self.conclusion):
            found |= fact.vars()
        return found | self.formula.all_vars()

    def max_index(self) -> int:
        return max((v.index for v in self.vars()), default=-1)

    def apply(self, subst: Substitution) -> "OrderedClause":
        return OrderedClause(
            tuple(h.apply(subst) for h in self.hypotheses),
            self.formula.apply(subst),
            tuple(c.apply(subst) for c in self.conclusion),
            self.idx,
            self.history,
        )

    def as_horn(self) -> HornClause:
        """The hypotheses and formula over a dummy conclusion, for lemma helpers."""
        return HornClause(tuple(self.facts), self.conclusion[0], self.formula)

    def key(self) -> Tuple:
        variables = []
        for fact in list(self.conclusion) + self.facts:
            variables.extend(fact.iter_vars())
        renaming = canonical_renaming(variables, self.formula)
        return (
            tuple(OrderedFact(h.fact.apply(renaming), h.delta) for h in self.hypotheses),
            self.formula.rename(renaming),
            tuple(c.apply(renaming) for c in self.conclusion),
        )

    def __str__(self) -> str:
        parts = [str(h) for h in self.hypotheses] + [str(a) for a in self.formula.atoms]
        head = " ⋏ ".join(str(c) for c in self.conclusion)
        return f"{' && '.join(parts)} -> {head}" if parts else f"-> {head}"


def build_query_clause(statement: Statement, context: SaturationContext) -> OrderedClause:
    """Each premise fact Fi becomes a hypothesis ordered by {i ↦ ≤}.

    Facts of declared blocking predicates enter in blocking form.
    """
    hypotheses = []
    for position, fact in enumerate(statement.premise, start=1):
        if fact.predicate in context.declared_blocking:
            fact = fact.to_blocking()
        hypotheses.append(OrderedFact(fact, OrderingFunction.at(position)))
    return OrderedClause(tuple(hypotheses), TRUE, statement.premise, statement.idx, ("query",))


def select_ordered(
    clause: OrderedClause, context: SaturationContext, loops: SelectionFunction
) -> Optional[int]:
    """Selection in the second phase.

    Clause-defined facts are unfolded while younger than `unfold_budget`;
    other facts while younger than `standard_budget` and not covered by a
    loop pattern of the first phase.
    """
    settings = context.settings
    positions = []
    for position, hypothesis in enumerate(clause.hypotheses):
        fact = hypothesis.fact
        if never_selectable(fact) or fact.predicate in context.declared_blocking:
            continue
        if context.is_clause_defined(fact):
            if hypothesis.generation >= settings.unfold_budget:
                continue
        elif hypothesis.generation >= settings.standard_budget or loops.covered(fact):
            continue
        positions.append(position)
    return deepest(clause.facts, positions)


def resolve_ordered(
    sat: HornClause, clause: OrderedClause, position: int, context: SaturationContext
) -> Optional[OrderedClause]:
    selected = clause.hypotheses[position]
    renamed = sat.renamed_apart(clause.max_index())
    subst = mgu(renamed.conclusion, selected.fact)
    if subst is None:
        return None
    added = tuple(
        OrderedFact(h, delta_res(h, renamed.conclusion, selected.delta, context), selected.generation + 1)
        for h in renamed.hypotheses
    )
    hypotheses = clause.hypotheses[:position] + added + clause.hypotheses[position + 1:]
    resolved = OrderedClause(
        hypotheses,
        clause.formula & renamed.formula,
        clause.conclusion,
        clause.idx,
        clause.history + (f"resolved {selected.fact} with {sat.origin or 'clause'}: {sat}",),
    )
    return resolved.apply(subst)


def normalize_ordered(clause: OrderedClause) -> Optional[OrderedClause]:
    """Solve formula equalities, merge duplicates and drop lone att(x)."""
    solved = normalize(clause.formula)
    if solved is None:
        return None
    subst, formula = solved
    clause = OrderedClause(
        clause.hypotheses, formula, clause.conclusion, clause.idx, clause.history
    ).apply(subst)
    kept: List[OrderedFact] = []
    for hypothesis in clause.hypotheses:
        twin = next(
            (k for k in kept if k.fact == hypothesis.fact and k.delta == hypothesis.delta), None
        )
        if twin is None:
            kept.append(hypothesis)
        elif hypothesis.generation < twin.generation:
            kept[kept.index(twin)] = hypothesis
    elsewhere: Set[Var] = set(formula.free_vars())
    for fact in clause.conclusion:
        elsewhere |= fact.vars()
    result = []
    for position, hypothesis in enumerate(kept):
        fact = hypothesis.fact
        if fact.predicate == ATTACKER and isinstance(fact.args[0], Var):
            others = set()
            for other_position, other in enumerate(kept):
                if other_position != position:
                    others |= other.fact.vars()
            if fact.args[0] not in elsewhere | others:
                continue
        result.append(hypothesis)
    return OrderedClause(tuple(result), formula, clause.conclusion, clause.idx, clause.history)


def _in_written_order(deltas: Sequence[OrderingFunction], places: Sequence[Optional[int]]) -> bool:
    """Each premise fact matched strictly before the conclusion conjunct
    that the next premise fact was matched on."""
    for delta, place in zip(deltas, places[1:]):
        if place is None or delta.get(place) is not Relation.LESS:
            return False
    return True


def ordered_matchings(
    lemma: Statement, clause: OrderedClause, context: SaturationContext, inductive: bool
) -> Iterator[Tuple[Substitution, List[OrderingFunction]]]:
    """σ and δ1..δm with each premise fact on a hypothesis (inheriting its
    ordering function) or, for proved lemmas, on conclusion conjunct j with {j ↦ ≤}.

    An ordered lemma only applies where the ordering functions show its
    premise events in the written order.
    """
    premise = lemma.premise

    def options(fact: Fact) -> List[Tuple[Fact, OrderingFunction, Optional[int]]]:
        found = []
        for hypothesis in clause.hypotheses:
            if hypothesis.fact.predicate != fact.predicate:
                continue
            if inductive and context.is_clause_defined(fact) and hypothesis.fact.blocked:
                continue
            found.append((hypothesis.fact, hypothesis.delta, None))
        if not inductive:
            for position, conjunct in enumerate(clause.conclusion, start=1):
                if conjunct.predicate == fact.predicate and conjunct.blocked == fact.blocked:
                    found.append((conjunct, OrderingFunction.at(position), position))
        return found

    def search(position: int, subst: Substitution, deltas: List[OrderingFunction], places: List[Optional[int]]):
        if position == len(premise):
            if not lemma.ordered or _in_written_order(deltas, places):
                yield subst, list(deltas)
            return
        for target, delta, place in options(premise[position]):
            extended = match_sequences(premise[position].args, target.args, subst)
            if extended is None:
                continue
            deltas.append(delta)
            places.append(place)
            yield from search(position + 1, extended, deltas, places)
            deltas.pop()
            places.pop()

    yield from search(0, {}, [], [])


def instantiate_ordered(
    lemma: Statement,
    subst: Substitution,
    deltas: Sequence[OrderingFunction],
    clause: OrderedClause,
    context: SaturationContext,
) -> List[OrderedClause]:
    standard = [d for f, d in zip(lemma.premise, deltas) if not context.is_clause_defined(f)]
    ordered_delta = added_delta(standard)
    fresh = FreshVariables(clause.max_index() + 1)
    label = lemma.label or str(lemma)
    result = []
    for disjunct in lemma.conclusion:
        local = dict(subst)
        existentials = sorted(existential_vars(lemma, disjunct), key=lambda v: (v.name, v.index))
        local.update(fresh.renaming(existentials))
        added = []
        for fact in disjunct.facts:
            fact = fact.apply(local)
            delta = EMPTY if context.is_user(fact) else ordered_delta
            added.append(OrderedFact(fact.to_blocking(), delta))
        result.append(
            OrderedClause(
                clause.hypotheses + tuple(added),
                clause.formula & disjunct.formula.apply(local),
                clause.conclusion,
                clause.idx,
                clause.history + (f"applied {label}",),
            )
        )
    return result


class OrderedSolver:
    """Runs the second phase for one statement against a saturated set."""

    def __init__(self, context: SaturationContext, saturated: SaturationResult):
        self.context = context
        self.saturated = saturated
        self.loops = SelectionFunction()
        self.loops.loop_patterns = list(saturated.loop_patterns)
        self.processed = 0

    def _apply_lemma_once(self, clause: OrderedClause) -> Optional[List[OrderedClause]]:
        horn = clause.as_horn()
        candidates = [(lemma, False) for lemma in self.context.lemmas]
        candidates += [(lemma, True) for lemma in self.context.inductive]
        for lemma, inductive in candidates:
            renamed = rename_statement(lemma, clause.max_index() + 1)
            for subst, deltas in ordered_matchings(renamed, clause, self.context, inductive):
                if any(disjunct_present(renamed, d, subst, horn) for d in renamed.conclusion):
                    continue
                if inductive and not is_strict_for(deltas, clause.idx, len(clause.conclusion), lemma.idx):
                    continue
                return instantiate_ordered(renamed, subst, deltas, clause, self.context)
        return None

    def apply_lemmas(self, clause: OrderedClause) -> List[OrderedClause]:
        pending = [(clause, 0)]
        done = []
        while pending:
            current, depth = pending.pop()
            step = None
            if depth < self.context.settings.lemma_rounds:
                step = self._apply_lemma_once(current)
            if step is None:
                done.append(current)
                continue
            for produced in step:
                normal = normalize_ordered(produced)
                if normal is not None:
                    pending.append((normal, depth + 1))
        return done

    def run(self, start: OrderedClause) -> List[OrderedClause]:
        """Clauses left once nothing is selectable."""
        limit = self.context.settings.max_ordered_clauses
        queue: Deque[OrderedClause] = deque([start])
        seen: Set[Tuple] = set()
        finished: List[OrderedClause] = []
        while queue:
            clause = normalize_ordered(queue.popleft())
            if clause is None:
                continue
            for current in self.apply_lemmas(clause):
                key = current.key()
                if key in seen:
                    continue
                seen.add(key)
                self.processed += 1
                if self.processed > limit:
                    raise ResourceLimitExceeded(
                        f"second phase exceeded {limit} clauses", self.processed, self.processed
                    )
                position = select_ordered(current, self.context, self.loops)
                if position is None:
                    finished.append(current)
                    continue
                predicate = current.hypotheses[position].fact.predicate
                for sat in self.saturated.concluding(predicate):
                    resolvent = resolve_ordered(sat, current, position, self.context)
                    if resolvent is not None:
                        queue.append(resolvent)
        logger.debug("Second phase produced %d clauses from %d", len(finished), self.processed)
        return finished
