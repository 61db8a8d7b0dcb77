"""Destructor evaluation, on ground terms and symbolically."""

from typing import List, NamedTuple, Optional, Set, Tuple

from ..errors import EvaluationError
from .formula import TRUE, Disequal, Formula, normalize
from .symbols import Signature
from .term import (
    FAIL,
    Fail,
    FreshVariables,
    Fun,
    Name,
    Substitution,
    Term,
    Var,
    apply_subst,
    compose,
    make_tuple,
)
from .unify import match_sequences, unify_sequences


class Branch(NamedTuple):
    """One symbolic outcome: under σ and φ the expression evaluates to `result`."""

    result: Term
    subst: Substitution
    formula: Formula


def evaluate_ground(term: Term, signature: Signature) -> Term:
    """Evaluate a closed expression to a message or FAIL."""
    if isinstance(term, Var):
        raise EvaluationError(f"Cannot evaluate open term: variable {term}")
    if not isinstance(term, Fun):
        return term
    symbol = signature.get(term.symbol)
    values = tuple(evaluate_ground(arg, signature) for arg in term.args)
    if any(isinstance(v, Fail) for v in values):
        return FAIL
    if symbol.builds_terms:
        return Fun(term.symbol, values)
    for rule in symbol.rules:
        theta = match_sequences(rule.lhs, values)
        if theta is not None:
            return apply_subst(theta, rule.rhs)
    return FAIL


def _evaluate_args(
    args: Tuple[Term, ...], signature: Signature, fresh: FreshVariables, introduced: Set[Var]
) -> List[Tuple[Tuple[Term, ...], Substitution, Formula]]:
    results: List[Tuple[Tuple[Term, ...], Substitution, Formula]] = [((), {}, TRUE)]
    for arg in args:
        extended = []
        for values, subst, phi in results:
            for branch in _evaluate(apply_subst(subst, arg), signature, fresh, introduced):
                values_now = tuple(apply_subst(branch.subst, v) for v in values)
                extended.append(
                    (
                        values_now + (branch.result,),
                        compose(subst, branch.subst),
                        phi.apply(branch.subst) & branch.formula,
                    )
                )
        results = extended
    return results


def _settle(
    result: Term, subst: Substitution, formula: Formula
) -> Optional[Branch]:
    solved = normalize(formula)
    if solved is None:
        return None
    extra, rest = solved
    return Branch(apply_subst(extra, result), compose(subst, extra), rest)


def _evaluate(
    term: Term, signature: Signature, fresh: FreshVariables, introduced: Set[Var]
) -> List[Branch]:
    if not isinstance(term, Fun):
        return [Branch(term, {}, TRUE)]
    symbol = signature.get(term.symbol)
    branches: List[Branch] = []
    for values, subst, phi in _evaluate_args(term.args, signature, fresh, introduced):
        if any(isinstance(v, Fail) for v in values):
            branches.append(Branch(FAIL, subst, phi))
            continue
        if symbol.builds_terms:
            branches.append(Branch(Fun(term.symbol, values), subst, phi))
            continue
        guards: List[Disequal] = []
        for rule in symbol.rules:
            renaming = fresh.renaming(rule.variables())
            introduced.update(renaming.values())
            lhs = tuple(apply_subst(renaming, t) for t in rule.lhs)
            rhs = apply_subst(renaming, rule.rhs)
            theta = unify_sequences(lhs, values)
            if theta is not None:
                guarded = (phi & Formula(tuple(guards))).apply(theta)
                settled = _settle(apply_subst(theta, rhs), compose(subst, theta), guarded)
                if settled is not None:
                    branches.append(settled)
            guards.append(
                Disequal(make_tuple(values), make_tuple(lhs), frozenset(renaming.values()))
            )
        settled = _settle(FAIL, subst, phi & Formula(tuple(guards)))
        if settled is not None:
            branches.append(settled)
    return branches


def eval_expression(
    term: Term, signature: Signature, fresh: Optional[FreshVariables] = None
) -> List[Branch]:
    """Symbolic evaluation returning every (result, σ, φ) branch, fail branches included.

    Rule variables are renamed with `fresh`; bindings of those variables
    are dropped from the returned substitutions.
    """
    fresh = fresh or FreshVariables()
    introduced: Set[Var] = set()
    out = []
    for branch in _evaluate(term, signature, fresh, introduced):
        subst = {v: t for v, t in branch.subst.items() if v not in introduced}
        out.append(Branch(branch.result, subst, branch.formula))
    return out


def contains_destructor(term: Term, signature: Signature) -> bool:
    if isinstance(term, Fun):
        symbol = signature.find(term.symbol)
        if symbol is not None and symbol.is_destructor:
            return True
        return any(contains_destructor(a, signature) for a in term.args)
    if isinstance(term, Name):
        return any(contains_destructor(a, signature) for a in term.args)
    return False
