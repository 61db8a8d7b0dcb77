"""Clause subsumption with the blocking-aware fact order."""

from typing import Callable, Optional, Sequence

from ..clauses.clause import HornClause
from ..terms.fact import Fact
from ..terms.formula import Formula, check_formula_implication
from ..terms.term import Substitution
from ..terms.unify import match_fact, match_sequences


def match_hypothesis(pattern: Fact, target: Fact, subst: Substitution) -> Optional[Substitution]:
    """Extend `subst` so that pattern σ = target or pattern σ = ⌈target⌉ᵇ.

    A blocking pattern may cover a plain target; a plain pattern never
    covers a blocking one.
    """
    if pattern.predicate != target.predicate:
        return None
    if pattern.blocked != target.blocked and not pattern.blocked:
        return None
    return match_sequences(pattern.args, target.args, subst)


def match_injective(
    patterns: Sequence[Fact],
    targets: Sequence[Fact],
    subst: Substitution,
    accept: Callable[[Substitution], bool],
    matcher=match_hypothesis,
) -> Optional[Substitution]:
    """Backtracking search for an injective mapping of `patterns` into `targets`."""
    used = [False] * len(targets)

    def search(position: int, current: Substitution) -> Optional[Substitution]:
        if position == len(patterns):
            return current if accept(current) else None
        pattern = patterns[position]
        for index, target in enumerate(targets):
            if used[index]:
                continue
            extended = matcher(pattern, target, current)
            if extended is None:
                continue
            used[index] = True
            found = search(position + 1, extended)
            used[index] = False
            if found is not None:
                return found
        return None

    return search(0, subst)


def _most_constrained_first(facts: Sequence[Fact]) -> Sequence[Fact]:
    return sorted(facts, key=lambda f: (-f.depth, f.predicate))


def subsumes(general: HornClause, specific: HornClause) -> bool:
    """True when `general` subsumes `specific`."""
    if len(general.hypotheses) > len(specific.hypotheses):
        return False
    general = general.renamed_apart(specific.max_index())
    start = match_fact(general.conclusion, specific.conclusion)
    if start is None:
        return False

    def formula_ok(subst: Substitution) -> bool:
        if general.formula.is_true:
            return True
        return check_formula_implication(specific.formula, general.formula.apply(subst))

    found = match_injective(
        _most_constrained_first(general.hypotheses), specific.hypotheses, start, formula_ok
    )
    return found is not None


def formula_entails(premise: Formula, conclusion: Formula) -> bool:
    return conclusion.is_true or check_formula_implication(premise, conclusion)
