"""Symbolic kernel: terms, facts, substitutions, unification, constraints and evaluation."""

from .evaluate import Branch, eval_expression, evaluate_ground
from .fact import ATTACKER, EVENT, MESSAGE, Fact, attacker, event, message
from .formula import (
    TRUE,
    Disequal,
    Equal,
    Formula,
    NatLeq,
    NatLess,
    check_formula_implication,
    normalize,
)
from .symbols import FunctionSymbol, RewriteRule, Signature, SymbolKind
from .term import (
    FAIL,
    FreshVariables,
    Fun,
    Name,
    Substitution,
    Term,
    Var,
    apply_subst,
    make_tuple,
    nat,
)
from .unify import match_fact, mgu, unify_terms

__all__ = [
    "ATTACKER",
    "EVENT",
    "FAIL",
    "MESSAGE",
    "TRUE",
    "Branch",
    "Disequal",
    "Equal",
    "Fact",
    "Formula",
    "FreshVariables",
    "Fun",
    "FunctionSymbol",
    "Name",
    "NatLeq",
    "NatLess",
    "RewriteRule",
    "Signature",
    "Substitution",
    "SymbolKind",
    "Term",
    "Var",
    "apply_subst",
    "attacker",
    "check_formula_implication",
    "eval_expression",
    "evaluate_ground",
    "event",
    "make_tuple",
    "match_fact",
    "message",
    "mgu",
    "nat",
    "normalize",
    "unify_terms",
]
