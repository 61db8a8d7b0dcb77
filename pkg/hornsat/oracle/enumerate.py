"""Bottom-up enumeration of derivable ground facts over a finite term universe."""

import itertools
import logging
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set

from ..clauses.clause import HornClause
from ..terms.fact import Fact
from ..terms.formula import normalize
from ..terms.term import Fun, Name, Substitution, Term, Var
from ..terms.unify import match_fact
from .derivation import Derivation

logger = logging.getLogger(__name__)


def subterms(term: Term) -> Iterator[Term]:
    yield term
    if isinstance(term, (Fun, Name)):
        for arg in term.args:
            yield from subterms(arg)


def universe_of(terms: Iterable[Term]) -> Set[Term]:
    """Every ground subterm of `terms`."""
    found: Set[Term] = set()
    for term in terms:
        for sub in subterms(term):
            if not isinstance(sub, Var) and sub not in found:
                if all(not isinstance(v, Var) for v in subterms(sub)):
                    found.add(sub)
    return found


def _formula_holds(clause: HornClause, subst: Substitution) -> bool:
    formula = clause.formula.apply(subst)
    if formula.is_true:
        return True
    solved = normalize(formula)
    return solved is not None and not solved[0] and solved[1].is_true


def _instances(
    clause: HornClause, known: Dict[Fact, Derivation], by_predicate: Dict[tuple, List[Fact]]
) -> Iterator[tuple]:
    hypotheses = clause.hypotheses

    def search(position: int, subst: Substitution, chosen: List[Fact]):
        if position == len(hypotheses):
            yield subst, list(chosen)
            return
        hypothesis = hypotheses[position]
        for fact in by_predicate.get((hypothesis.predicate, hypothesis.blocked), ()):
            extended = match_fact(hypothesis, fact, subst)
            if extended is not None:
                chosen.append(fact)
                yield from search(position + 1, extended, chosen)
                chosen.pop()

    yield from search(0, {}, [])


def enumerate_derivable(
    clauses: Sequence[HornClause],
    universe: Iterable[Term],
    max_size: int = 8,
    max_universe: Optional[int] = 400,
) -> Dict[Fact, Derivation]:
    """Ground facts over `universe` with a derivation of at most `max_size`
    nodes, each mapped to a smallest derivation found.

    Raises:
        ValueError: If the universe exceeds `max_universe` terms
    """
    universe = sorted(set(universe), key=str)
    if max_universe is not None and len(universe) > max_universe:
        raise ValueError(f"Term universe of {len(universe)} exceeds the bound {max_universe}")
    allowed = set(universe)
    known: Dict[Fact, Derivation] = {}
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        by_predicate: Dict[tuple, List[Fact]] = {}
        for fact in known:
            by_predicate.setdefault((fact.predicate, fact.blocked), []).append(fact)
        for clause in clauses:
            for subst, premises in list(_instances(clause, known, by_predicate)):
                size = 1 + sum(known[p].size for p in premises)
                if size > max_size:
                    continue
                missing = sorted(
                    (clause.conclusion.vars() | clause.formula.free_vars()) - set(subst),
                    key=lambda v: (v.name, v.index),
                )
                for values in itertools.product(universe, repeat=len(missing)):
                    full = dict(subst)
                    full.update(zip(missing, values))
                    if not _formula_holds(clause, full):
                        continue
                    fact = clause.conclusion.apply(full)
                    if any(a not in allowed for a in fact.args):
                        continue
                    current = known.get(fact)
                    if current is None or current.size > size:
                        known[fact] = Derivation.of(clause, full, (known[p] for p in premises))
                        changed = True
    logger.debug("Enumerated %d facts in %d rounds", len(known), rounds)
    return known


def minimal_sizes(derivable: Dict[Fact, Derivation]) -> Dict[Fact, int]:
    return {fact: derivation.size for fact, derivation in derivable.items()}
