"""Syntactic unification with occurs check, and one-way matching."""

from typing import AbstractSet, Dict, Iterable, List, Optional, Sequence, Tuple

from .fact import Fact
from .term import Fail, Fun, Name, Substitution, Term, Var


def _walk(term: Term, bindings: Dict[Var, Term]) -> Term:
    while isinstance(term, Var) and term in bindings:
        term = bindings[term]
    return term


def _occurs(var: Var, term: Term, bindings: Dict[Var, Term]) -> bool:
    stack = [term]
    while stack:
        current = _walk(stack.pop(), bindings)
        if current == var:
            return True
        if isinstance(current, (Fun, Name)):
            stack.extend(current.args)
    return False


def _resolve(term: Term, bindings: Dict[Var, Term]) -> Term:
    term = _walk(term, bindings)
    if isinstance(term, Fun) and term.args:
        return Fun(term.symbol, tuple(_resolve(a, bindings) for a in term.args))
    if isinstance(term, Name) and term.args:
        return Name(term.symbol, tuple(_resolve(a, bindings) for a in term.args))
    return term


def _bindable(var: Var, flexible: Optional[AbstractSet[Var]]) -> bool:
    return flexible is None or var in flexible


def unify_pairs(
    pairs: Iterable[Tuple[Term, Term]],
    subst: Optional[Substitution] = None,
    flexible: Optional[AbstractSet[Var]] = None,
) -> Optional[Substitution]:
    """Unify every pair simultaneously.

    Args:
        pairs: Term pairs to make equal
        subst: Bindings to extend
        flexible: When given, only these variables may be bound; every
            other variable behaves as a constant.

    Returns:
        An idempotent most general unifier, or None when none exists.
    """
    bindings: Dict[Var, Term] = dict(subst) if subst else {}
    stack: List[Tuple[Term, Term]] = list(pairs)
    while stack:
        left, right = stack.pop()
        left = _walk(left, bindings)
        right = _walk(right, bindings)
        if left == right:
            continue
        if isinstance(left, Var) and _bindable(left, flexible):
            if _occurs(left, right, bindings):
                return None
            bindings[left] = right
            continue
        if isinstance(right, Var) and _bindable(right, flexible):
            if _occurs(right, left, bindings):
                return None
            bindings[right] = left
            continue
        if isinstance(left, Var) or isinstance(right, Var):
            return None
        if type(left) is not type(right) or isinstance(left, Fail):
            return None
        if left.symbol != right.symbol or len(left.args) != len(right.args):
            return None
        stack.extend(zip(left.args, right.args))
    return {v: _resolve(t, bindings) for v, t in bindings.items()}


def unify_terms(
    left: Term,
    right: Term,
    subst: Optional[Substitution] = None,
    flexible: Optional[AbstractSet[Var]] = None,
) -> Optional[Substitution]:
    return unify_pairs([(left, right)], subst, flexible)


def unify_sequences(
    lefts: Sequence[Term],
    rights: Sequence[Term],
    subst: Optional[Substitution] = None,
    flexible: Optional[AbstractSet[Var]] = None,
) -> Optional[Substitution]:
    if len(lefts) != len(rights):
        return None
    return unify_pairs(zip(lefts, rights), subst, flexible)


def mgu(
    first: Fact,
    second: Fact,
    subst: Optional[Substitution] = None,
    flexible: Optional[AbstractSet[Var]] = None,
) -> Optional[Substitution]:
    """Most general unifier of two facts, or None.

    Facts unify only when predicate, blocking flag and arity agree.
    """
    if first.predicate != second.predicate or first.blocked != second.blocked:
        return None
    return unify_sequences(first.args, second.args, subst, flexible)


def match_terms(
    pattern: Term, target: Term, subst: Optional[Substitution] = None
) -> Optional[Substitution]:
    """One-way matching: find σ with pattern σ = target, binding pattern variables only."""
    bindings: Dict[Var, Term] = dict(subst) if subst else {}
    stack = [(pattern, target)]
    while stack:
        pat, tgt = stack.pop()
        if isinstance(pat, Var):
            bound = bindings.get(pat)
            if bound is None:
                bindings[pat] = tgt
            elif bound != tgt:
                return None
            continue
        if type(pat) is not type(tgt):
            return None
        if isinstance(pat, Fail):
            continue
        if pat.symbol != tgt.symbol or len(pat.args) != len(tgt.args):
            return None
        stack.extend(zip(pat.args, tgt.args))
    return bindings


def match_sequences(
    patterns: Sequence[Term], targets: Sequence[Term], subst: Optional[Substitution] = None
) -> Optional[Substitution]:
    if len(patterns) != len(targets):
        return None
    bindings = dict(subst) if subst else {}
    for pat, tgt in zip(patterns, targets):
        bindings = match_terms(pat, tgt, bindings)
        if bindings is None:
            return None
    return bindings


def match_fact(
    pattern: Fact, target: Fact, subst: Optional[Substitution] = None
) -> Optional[Substitution]:
    if pattern.predicate != target.predicate or pattern.blocked != target.blocked:
        return None
    return match_sequences(pattern.args, target.args, subst)
