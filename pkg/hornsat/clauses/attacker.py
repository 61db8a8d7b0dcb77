"""Clauses describing the attacker's capabilities."""

from typing import List

from ..language.ast import Specification
from ..terms.fact import attacker, message
from ..terms.symbols import SESSION_SORT
from ..terms.term import FAIL, SUCC, Fun, Name, Var
from .clause import LISTEN_ORIGIN, ClauseKind, HornClause

ATTACKER_NAME = "~new"


def attacker_clauses(spec: Specification) -> List[HornClause]:
    """RInit, RGen, RFail, one Rf clause per constructor and rewrite rule, Rl, Rs,
    plus construction and projection clauses of data-constructors (C_std)."""
    clauses: List[HornClause] = []
    for free in spec.public_names():
        clauses.append(HornClause((), attacker(free.term), origin="RInit", kind=ClauseKind.ATTACKER))
    session = Var("i", 0, SESSION_SORT)
    clauses.append(
        HornClause((), attacker(Name(ATTACKER_NAME, (session,))), origin="RGen", kind=ClauseKind.ATTACKER)
    )
    clauses.append(HornClause((), attacker(FAIL), origin="RFail", kind=ClauseKind.ATTACKER))

    for symbol in spec.signature:
        xs = tuple(Var("x", k) for k in range(symbol.arity))
        hypotheses = tuple(attacker(x) for x in xs)
        if symbol.is_destructor:
            for number, rule in enumerate(symbol.rules, start=1):
                clauses.append(
                    HornClause(
                        tuple(attacker(t) for t in rule.lhs),
                        attacker(rule.rhs),
                        origin=f"Rf {symbol.name}/{number}",
                        kind=ClauseKind.ATTACKER,
                    )
                )
            continue
        if symbol.private:
            continue
        built = Fun(symbol.name, xs)
        kind = ClauseKind.STANDARD if symbol.is_data else ClauseKind.ATTACKER
        clauses.append(HornClause(hypotheses, attacker(built), origin=f"Rf {symbol.name}", kind=kind))
        # no projection for succ: every natural follows from zero and succ
        if symbol.is_data and symbol.name != SUCC:
            for position, x in enumerate(xs, start=1):
                clauses.append(
                    HornClause(
                        (attacker(built),),
                        attacker(x),
                        origin=f"proj {symbol.name}/{position}",
                        kind=ClauseKind.STANDARD,
                    )
                )

    x, y = Var("x"), Var("y")
    clauses.append(
        HornClause((message(x, y), attacker(x)), attacker(y), origin=LISTEN_ORIGIN, kind=ClauseKind.ATTACKER)
    )
    clauses.append(
        HornClause((attacker(x), attacker(y)), message(x, y), origin="Rs", kind=ClauseKind.ATTACKER)
    )
    return clauses
