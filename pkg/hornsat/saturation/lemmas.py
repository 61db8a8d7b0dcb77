"""Lemma, axiom and inductive-lemma application on first-phase clauses."""

import logging
from typing import Iterator, List, Optional, Set, Tuple

from ..clauses.clause import HornClause, fingerprint
from ..language.ast import Disjunct, Statement
from ..terms.fact import STANDARD_PREDICATES, Fact
from ..terms.formula import check_formula_implication
from ..terms.term import FreshVariables, Substitution, Var, shift_var
from ..terms.unify import match_sequences, unify_sequences
from .context import SaturationContext

logger = logging.getLogger(__name__)


def statement_vars(statement: Statement) -> Set[Var]:
    found: Set[Var] = set()
    for fact in statement.premise:
        found |= fact.vars()
    for disjunct in statement.conclusion:
        for fact in disjunct.facts:
            found |= fact.vars()
        found |= disjunct.formula.all_vars()
    return found


def rename_statement(statement: Statement, offset: int) -> Statement:
    """Shift every variable index of the statement by `offset`."""
    if offset == 0:
        return statement
    renaming = {v: shift_var(v, offset) for v in statement_vars(statement)}
    disjuncts = tuple(
        Disjunct(tuple(f.apply(renaming) for f in d.facts), d.formula.rename(renaming))
        for d in statement.conclusion
    )
    return Statement(
        statement.kind,
        tuple(f.apply(renaming) for f in statement.premise),
        disjuncts,
        statement.induction,
        statement.label,
        tuple(renaming.get(v, v) for v in statement.variables),
        statement.line,
        statement.ordered,
    )


def existential_vars(statement: Statement, disjunct: Disjunct) -> Set[Var]:
    found: Set[Var] = set()
    for fact in disjunct.facts:
        found |= fact.vars()
    found |= disjunct.formula.free_vars()
    return found - statement.variables_of_premise()


def _adds_only_user_facts(statement: Statement) -> bool:
    return all(
        f.predicate not in STANDARD_PREDICATES for d in statement.conclusion for f in d.facts
    )


def _conclusion_allowed(statement: Statement, clause: HornClause, context: SaturationContext) -> bool:
    head = clause.conclusion
    if context.is_clause_defined(head):
        return True
    for disjunct in statement.conclusion:
        for fact in disjunct.facts:
            if fact.predicate == head.predicate and unify_sequences(fact.args, head.args) is not None:
                return False
    return True


def premise_matchings(
    statement: Statement,
    clause: HornClause,
    context: SaturationContext,
    inductive: bool,
) -> Iterator[Substitution]:
    """Every σ with each premise fact mapped onto a hypothesis, or onto the
    conclusion for non-inductive lemmas."""
    use_conclusion = not inductive and _conclusion_allowed(statement, clause, context)
    premise = statement.premise

    def targets(fact: Fact) -> List[Fact]:
        found = []
        for hypothesis in clause.hypotheses:
            if hypothesis.predicate != fact.predicate:
                continue
            if inductive and context.is_clause_defined(fact) and hypothesis.blocked != fact.blocked:
                continue
            found.append(hypothesis)
        if use_conclusion and clause.conclusion.predicate == fact.predicate:
            if clause.conclusion.blocked == fact.blocked:
                found.append(clause.conclusion)
        return found

    def search(position: int, subst: Substitution) -> Iterator[Substitution]:
        if position == len(premise):
            yield subst
            return
        for target in targets(premise[position]):
            extended = match_sequences(premise[position].args, target.args, subst)
            if extended is not None:
                yield from search(position + 1, extended)

    yield from search(0, {})


def disjunct_present(
    statement: Statement, disjunct: Disjunct, subst: Substitution, clause: HornClause
) -> bool:
    """True when ψσ already holds in the clause for some choice of its existentials."""
    flexible = existential_vars(statement, disjunct)
    facts = [f.apply(subst) for f in disjunct.facts]

    def search(position: int, current: Substitution) -> bool:
        if position == len(facts):
            formula = disjunct.formula.apply(subst).apply(current)
            return formula.is_true or check_formula_implication(clause.formula, formula)
        fact = facts[position]
        for hypothesis in clause.hypotheses:
            if hypothesis.predicate != fact.predicate:
                continue
            extended = unify_sequences(fact.args, hypothesis.args, current, flexible)
            if extended is not None and search(position + 1, extended):
                return True
        return False

    return search(0, {})


def instantiate(
    statement: Statement, subst: Substitution, clause: HornClause
) -> List[HornClause]:
    """One clause per disjunct: the hypotheses gain the blocking facts of ψσ
    and the formula gains its constraints, existentials renamed fresh."""
    fresh = FreshVariables(clause.max_index() + 1)
    result = []
    for disjunct in statement.conclusion:
        local = dict(subst)
        local.update(fresh.renaming(sorted(existential_vars(statement, disjunct), key=_var_key)))
        added = tuple(f.apply(local).to_blocking() for f in disjunct.facts)
        result.append(
            HornClause(
                clause.hypotheses + added,
                clause.conclusion,
                clause.formula & disjunct.formula.apply(local),
                clause.origin,
                clause.kind,
            )
        )
    return result


def _var_key(var: Var) -> Tuple[str, int]:
    return (var.name, var.index)


class LemmaApplier:
    """Applies the lemmas of a context to clauses until none adds anything.

    Clauses on which no lemma applies are remembered by fingerprint.
    """

    def __init__(self, context: SaturationContext):
        self.context = context
        self._stable: Set[Tuple] = set()
        self.applications = 0

    def _candidates(self, clause: HornClause) -> Iterator[Tuple[Statement, bool]]:
        if clause.is_standard:
            return
        user_head = not clause.conclusion.is_standard
        for lemma in self.context.lemmas:
            # the order of hypotheses is unknown here
            if lemma.ordered:
                continue
            if user_head and not _adds_only_user_facts(lemma):
                continue
            yield lemma, False
        if clause.is_listening:
            return
        for lemma in self.context.inductive:
            if user_head and not _adds_only_user_facts(lemma):
                continue
            yield lemma, True

    def apply_once(self, clause: HornClause) -> Optional[List[HornClause]]:
        """Result of one application, or None when no lemma adds anything."""
        key = fingerprint(clause)
        if key in self._stable:
            return None
        known = clause
        if not clause.conclusion.is_standard:
            # a user conclusion also counts as known
            known = HornClause(clause.hypotheses + (clause.conclusion,), clause.conclusion, clause.formula)
        for lemma, inductive in self._candidates(clause):
            renamed = rename_statement(lemma, clause.max_index() + 1)
            for subst in premise_matchings(renamed, clause, self.context, inductive):
                if any(disjunct_present(renamed, d, subst, known) for d in renamed.conclusion):
                    continue
                self.applications += 1
                logger.debug("Lemma %s applied to %s", lemma.label or lemma, clause)
                return instantiate(renamed, subst, clause)
        self._stable.add(key)
        return None

    def apply(self, clause: HornClause) -> List[HornClause]:
        """Saturate `clause` under the lemmas, at most `lemma_rounds` deep."""
        rounds = self.context.settings.lemma_rounds
        pending: List[Tuple[HornClause, int]] = [(clause, 0)]
        done: List[HornClause] = []
        while pending:
            current, depth = pending.pop()
            step = None if depth >= rounds else self.apply_once(current)
            if step is None:
                done.append(current)
            else:
                pending.extend((c, depth + 1) for c in step)
        return done
