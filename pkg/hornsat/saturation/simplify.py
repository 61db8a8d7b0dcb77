"""Structural simplification of first-phase clauses."""

from typing import List, Optional, Set

from ..clauses.clause import HornClause
from ..terms.fact import ATTACKER, Fact
from ..terms.formula import check_formula_implication, normalize
from ..terms.term import Var
from ..terms.unify import match_sequences
from .context import SaturationContext


def normalize_clause(clause: HornClause) -> Optional[HornClause]:
    """Solve the equalities of the formula; None when it is unsatisfiable."""
    if clause.formula.is_true:
        return clause
    solved = normalize(clause.formula)
    if solved is None:
        return None
    subst, formula = solved
    return HornClause(
        tuple(h.apply(subst) for h in clause.hypotheses),
        clause.conclusion.apply(subst),
        formula,
        clause.origin,
        clause.kind,
    )


def is_tautology(clause: HornClause) -> bool:
    return clause.conclusion in clause.hypotheses


def is_blocking_tautology(clause: HornClause, context: SaturationContext) -> bool:
    """b-F && H -> F with pred(F) outside F_p."""
    head = clause.conclusion
    if context.is_clause_defined(head):
        return False
    return any(h.blocked and h.same_modulo_blocking(head) for h in clause.hypotheses)


def _replace_hypotheses(clause: HornClause, hypotheses, formula=None) -> HornClause:
    return HornClause(
        tuple(hypotheses),
        clause.conclusion,
        clause.formula if formula is None else formula,
        clause.origin,
        clause.kind,
    )


def merge_duplicates(clause: HornClause) -> HornClause:
    seen: List[Fact] = []
    for hypothesis in clause.hypotheses:
        if hypothesis not in seen:
            seen.append(hypothesis)
    if len(seen) == len(clause.hypotheses):
        return clause
    return _replace_hypotheses(clause, seen)


def _vars_outside(clause: HornClause, skip: int) -> Set[Var]:
    found = set(clause.conclusion.iter_vars())
    for position, hypothesis in enumerate(clause.hypotheses):
        if position != skip:
            found.update(hypothesis.iter_vars())
    return found


def drop_attacker_variables(clause: HornClause) -> HornClause:
    """Remove att(x) and b-att(x) when x occurs nowhere else."""
    formula_vars = clause.formula.free_vars()
    kept = list(clause.hypotheses)
    position = 0
    while position < len(kept):
        fact = kept[position]
        if fact.predicate == ATTACKER and isinstance(fact.args[0], Var):
            current = _replace_hypotheses(clause, kept)
            if fact.args[0] not in _vars_outside(current, position) | formula_vars:
                del kept[position]
                continue
        position += 1
    if len(kept) == len(clause.hypotheses):
        return clause
    return _replace_hypotheses(clause, kept)


def _redundant_once(clause: HornClause, keep_blocking: bool) -> Optional[HornClause]:
    hypotheses = clause.hypotheses
    for position, candidate in enumerate(hypotheses):
        rigid = _vars_outside(clause, position)
        for other_position, other in enumerate(hypotheses):
            if other_position == position or other.predicate != candidate.predicate:
                continue
            subst = match_sequences(candidate.args, other.args)
            if subst is None:
                continue
            if any(v in rigid and t != v for v, t in subst.items()):
                continue
            identical = candidate.args == other.args
            if identical and candidate.blocked != other.blocked:
                # the configured variant decides which of F and b-F survives
                if candidate.blocked == keep_blocking:
                    continue
            formula = clause.formula.apply(subst)
            if not identical and not clause.formula.is_true:
                if not check_formula_implication(clause.formula, formula):
                    continue
            kept = hypotheses[:position] + hypotheses[position + 1:]
            return _replace_hypotheses(clause, kept, formula)
    return None


def drop_redundant_hypotheses(clause: HornClause, keep_blocking: bool = True) -> HornClause:
    """H' && H && φ -> C becomes H && φσ -> C when ⌈H'σ⌉ᵇ is among ⌈H⌉ᵇ
    and σ leaves the variables of H and C untouched."""
    while True:
        reduced = _redundant_once(clause, keep_blocking)
        if reduced is None:
            return clause
        clause = reduced


def simplify(clause: HornClause, context: SaturationContext) -> List[HornClause]:
    """Apply the structural rules to a fixpoint.

    Returns:
        An empty list when the clause is deleted, otherwise the simplified clause.
    """
    keep_blocking = context.settings.keep_blocking_variant
    while True:
        normal = normalize_clause(clause)
        if normal is None:
            return []
        clause = normal
        if is_tautology(clause) or is_blocking_tautology(clause, context):
            return []
        reduced = merge_duplicates(clause)
        reduced = drop_attacker_variables(reduced)
        reduced = drop_redundant_hypotheses(reduced, keep_blocking)
        if reduced == clause:
            return [clause]
        clause = reduced
