"""Checking that a final ordered clause implies the statement conclusion."""

import logging
from typing import Any, Dict, Iterator, List, Optional, Sequence, Set, Tuple

from ..clauses.clause import HornClause
from ..language.ast import Disjunct, Statement
from ..saturation.context import SaturationContext
from ..saturation.engine import SaturationResult
from ..saturation.lemmas import existential_vars, rename_statement
from ..terms.fact import ATTACKER, EVENT, MESSAGE, Fact
from ..terms.formula import Equal, Formula, check_formula_implication, normalize
from ..terms.term import Substitution, Var, apply_subst
from ..terms.unify import match_sequences, mgu, unify_pairs, unify_sequences

logger = logging.getLogger(__name__)

Proof = Dict[str, Any]


def _max_index(facts: Sequence[Fact], formula: Formula) -> int:
    indices = [v.index for f in facts for v in f.iter_vars()]
    indices += [v.index for v in formula.all_vars()]
    return max(indices, default=-1)


class ConclusionChecker:
    """Decides whether `H && φ` entails some disjunct of the statement
    conclusion, instantiated by matching the premise onto the clause conclusion.

    Facts required by the conclusion are found among the hypotheses or, for
    clause-defined predicates (and attacker facts of queries), derived with a
    depth-bounded search over the saturated clauses. When that fails, a
    clause-defined hypothesis is split into one case per saturated clause
    able to conclude it.

    A blocking fact of a clause-defined predicate, as lemmas add them to
    saturated clauses, holds whenever its plain form does.
    """

    def __init__(
        self,
        statement: Statement,
        context: SaturationContext,
        saturated: SaturationResult,
        lemma_mode: bool = False,
    ):
        self.statement = statement
        self.context = context
        self.saturated = saturated
        self.lemma_mode = lemma_mode
        self._next_index = 0
        self._formula = Formula()

    def check(
        self, hypotheses: Sequence[Fact], formula: Formula, conclusion: Sequence[Fact]
    ) -> Optional[Proof]:
        """A proof tree when the conclusion holds, None otherwise."""
        depth = self.context.settings.inversion_depth
        return self._check_cases(list(hypotheses), formula, tuple(conclusion), depth, ())

    # case analysis

    def _check_cases(
        self,
        hypotheses: List[Fact],
        formula: Formula,
        conclusion: Tuple[Fact, ...],
        depth: int,
        inverted: Tuple[Fact, ...],
    ) -> Optional[Proof]:
        solved = normalize(formula)
        if solved is None:
            return {"vacuous": "unsatisfiable constraints"}
        subst, formula = solved
        hypotheses = [h.apply(subst) for h in hypotheses]
        conclusion = tuple(c.apply(subst) for c in conclusion)
        inverted = tuple(f.apply(subst) for f in inverted)

        proof = self._check_direct(hypotheses, formula, conclusion)
        if proof is not None or depth == 0:
            return proof

        candidates = [
            h for h in hypotheses if self.context.is_clause_defined(h) and h.to_plain() not in inverted
        ]
        candidates.sort(key=lambda h: not h.blocked)
        for target in candidates:
            proof = self._invert(target, hypotheses, formula, conclusion, depth, inverted)
            if proof is not None:
                return proof
        return None

    def _invert(
        self,
        target: Fact,
        hypotheses: List[Fact],
        formula: Formula,
        conclusion: Tuple[Fact, ...],
        depth: int,
        inverted: Tuple[Fact, ...],
    ) -> Optional[Proof]:
        plain = target.to_plain()
        cases = []
        for sat in self.saturated.concluding(plain.predicate):
            renamed = sat.renamed_apart(_max_index(hypotheses + list(conclusion), formula))
            subst = mgu(renamed.conclusion, plain)
            if subst is None:
                continue
            proof = self._check_cases(
                [h.apply(subst) for h in hypotheses + list(renamed.hypotheses)],
                (formula & renamed.formula).apply(subst),
                tuple(c.apply(subst) for c in conclusion),
                depth - 1,
                inverted + (plain.apply(subst),),
            )
            if proof is None:
                return None
            cases.append({"clause": str(sat), "proof": proof})
        logger.debug("Case split on %s closed %d cases", target, len(cases))
        return {"inversion": str(target), "cases": cases}

    # direct check

    def _check_direct(
        self, hypotheses: List[Fact], formula: Formula, conclusion: Tuple[Fact, ...]
    ) -> Optional[Proof]:
        offset = _max_index(hypotheses + list(conclusion), formula) + 1
        statement = rename_statement(self.statement, offset)
        premise_args = [a for f in statement.premise for a in f.args]
        conclusion_args = [a for f in conclusion for a in f.args]
        theta = match_sequences(premise_args, conclusion_args)
        if theta is None:
            return None
        self._formula = formula
        self._next_index = max(
            _max_index(hypotheses + list(conclusion), formula),
            max((v.index for v in existential_pool(statement)), default=-1),
        ) + 1
        for disjunct in statement.conclusion:
            found = self._prove_disjunct(statement, disjunct, theta, hypotheses, formula)
            if found is not None:
                return {"disjunct": str(disjunct), "facts": found}
        return None

    def _prove_disjunct(
        self,
        statement: Statement,
        disjunct: Disjunct,
        theta: Substitution,
        hypotheses: List[Fact],
        formula: Formula,
    ) -> Optional[List[Proof]]:
        flexible = set(existential_vars(statement, disjunct))
        goals = [f.apply(theta) for f in disjunct.facts]
        required = disjunct.formula.apply(theta)
        equalities = [(a.left, a.right) for a in required.atoms if isinstance(a, Equal)]
        rest = Formula(tuple(a for a in required.atoms if not isinstance(a, Equal)))

        for subst, proofs in self._goals(goals, {}, hypotheses, flexible, self._top_level):
            final = unify_pairs(equalities, subst, flexible) if equalities else subst
            if final is None:
                continue
            remaining = rest.apply(final)
            if remaining.is_true or check_formula_implication(formula, remaining):
                return proofs
        return None

    def _goals(
        self, goals, subst, hypotheses, flexible, prover
    ) -> Iterator[Tuple[Substitution, List[Proof]]]:
        if not goals:
            yield subst, []
            return
        first, rest = goals[0], goals[1:]
        for extended, proof in prover(first, subst, hypotheses, flexible):
            for final, proofs in self._goals(rest, extended, hypotheses, flexible, prover):
                yield final, [proof] + proofs

    def _top_level(self, goal: Fact, subst, hypotheses, flexible):
        from_hypotheses_only = (
            goal.predicate == EVENT
            or goal.blocked
            or goal.predicate in self.context.declared_blocking
            or (self.lemma_mode and goal.predicate in (ATTACKER, MESSAGE))
        )
        if from_hypotheses_only:
            yield from self._from_hypotheses(goal, subst, hypotheses, flexible)
            return
        yield from self._derive(goal, subst, hypotheses, flexible, self.context.settings.search_depth)

    def _from_hypotheses(self, goal: Fact, subst, hypotheses, flexible):
        for hypothesis in hypotheses:
            if hypothesis.predicate != goal.predicate:
                continue
            extended = unify_sequences(goal.args, hypothesis.args, subst, flexible)
            if extended is not None:
                yield extended, {"fact": str(goal.apply(extended)), "by": "hypothesis"}

    def _derive(self, goal: Fact, subst, hypotheses, flexible: Set[Var], depth: int):
        yield from self._from_hypotheses(goal, subst, hypotheses, flexible)
        if goal.blocked and self.context.is_clause_defined(goal):
            goal = goal.to_plain()
        if depth == 0 or goal.blocked or goal.predicate == EVENT:
            return
        head = apply_subst(subst, goal.args[0]) if goal.args else None
        facts_only = goal.predicate == ATTACKER and isinstance(head, Var) and head in flexible
        for sat in self.saturated.concluding(goal.predicate):
            if facts_only and sat.hypotheses:
                continue
            renamed = self._fresh(sat)
            wider = flexible | renamed.vars()
            extended = unify_sequences(goal.args, renamed.conclusion.args, subst, wider)
            if extended is None:
                continue

            def prover(subgoal, current, hyps, flex, _depth=depth):
                return self._derive(subgoal, current, hyps, flex, _depth - 1)

            for final, proofs in self._goals(list(renamed.hypotheses), extended, hypotheses, wider, prover):
                constraint = renamed.formula.apply(final)
                if not constraint.is_true and not check_formula_implication(self._formula, constraint):
                    continue
                yield final, {
                    "fact": str(goal.apply(final)),
                    "by": sat.origin or "clause",
                    "clause": str(sat),
                    "premises": proofs,
                }

    def _fresh(self, clause: HornClause) -> HornClause:
        renamed = clause.shifted(self._next_index - min((v.index for v in clause.vars()), default=0))
        self._next_index = renamed.max_index() + 1
        return renamed


def existential_pool(statement: Statement) -> Set[Var]:
    found: Set[Var] = set()
    for disjunct in statement.conclusion:
        found |= existential_vars(statement, disjunct)
    return found
