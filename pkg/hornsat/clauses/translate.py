"""Translation of an instrumented process into protocol clauses."""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..language.ast import (
    EventProcess,
    Input,
    LetExpression,
    LetSuchThat,
    Nil,
    Output,
    Parallel,
    Process,
    Replication,
    Restriction,
    Specification,
    UserClause,
    pattern_term,
    pattern_vars,
)
from ..terms.evaluate import eval_expression
from ..terms.fact import Fact, attacker, event, message
from ..terms.formula import TRUE, Disequal, Formula, normalize
from ..terms.term import Fail, FreshVariables, Substitution, Term, apply_subst, compose
from ..terms.unify import unify_terms
from .clause import ClauseKind, HornClause, dedupe

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Context:
    """Hypotheses H, constraint φ and the substitution ρ accumulated so far."""

    hypotheses: Tuple[Fact, ...] = ()
    formula: Formula = TRUE
    subst: Optional[Substitution] = None

    def term(self, term: Term) -> Term:
        return apply_subst(self.subst or {}, term)

    def refine(self, theta: Substitution, extra: Formula = TRUE) -> Optional["_Context"]:
        solved = normalize(self.formula.apply(theta) & extra.apply(theta))
        if solved is None:
            return None
        mu, formula = solved
        total = compose(theta, mu)
        return _Context(
            tuple(h.apply(total) for h in self.hypotheses),
            formula,
            compose(self.subst or {}, total),
        )

    def assume(self, fact: Fact) -> "_Context":
        return _Context(self.hypotheses + (fact,), self.formula, self.subst)


class ProcessTranslator:
    """Recursive clause generation over an instrumented process."""

    def __init__(self, spec: Specification, fresh: Optional[FreshVariables] = None):
        self.spec = spec
        self.fresh = fresh or FreshVariables()
        self.clauses: List[HornClause] = []

    def emit(self, context: _Context, conclusion: Fact, site: str) -> None:
        self.clauses.append(
            HornClause(context.hypotheses, conclusion, context.formula, site, ClauseKind.PROTOCOL)
        )

    def channel_fact(self, channel: Term, payload: Term) -> Fact:
        if self.spec.is_public_channel(channel):
            return attacker(payload)
        return message(channel, payload)

    def translate(self, process: Process, context: _Context) -> None:
        while True:
            if isinstance(process, Nil):
                return
            if isinstance(process, Parallel):
                self.translate(process.left, context)
                process = process.right
            elif isinstance(process, Replication):
                process = process.body
            elif isinstance(process, Restriction):
                raise ValueError("translate expects an instrumented process")
            elif isinstance(process, Output):
                channel = context.term(process.channel)
                payload = context.term(process.message)
                self.emit(context, self.channel_fact(channel, payload), f"out({channel}, {payload})")
                process = process.then
            elif isinstance(process, Input):
                channel = context.term(process.channel)
                context = context.assume(self.channel_fact(channel, process.variable))
                process = process.then
            elif isinstance(process, EventProcess):
                atom = context.term(process.atom)
                self.emit(context, event(atom), f"event {atom}")
                context = context.assume(event(atom, sure=True))
                process = process.then
            elif isinstance(process, LetExpression):
                self.translate_let(process, context)
                return
            elif isinstance(process, LetSuchThat):
                condition = process.condition.apply(context.subst or {})
                self.translate(process.then, context.assume(condition))
                process = process.otherwise
            else:
                raise TypeError(f"Not a process: {process!r}")

    def translate_let(self, process: LetExpression, context: _Context) -> None:
        expression = context.term(process.expression)
        for branch in eval_expression(expression, self.spec.signature, self.fresh):
            inner = context.refine(branch.subst, branch.formula)
            if inner is None:
                continue
            result = apply_subst(inner.subst, branch.result)
            if isinstance(result, Fail):
                self.translate(process.otherwise, inner)
                continue
            target = inner.term(pattern_term(process.pattern))
            matched = unify_terms(target, result)
            if matched is not None:
                then_context = inner.refine(matched)
                if then_context is not None:
                    self.translate(process.then, then_context)
            bound = frozenset(pattern_vars(process.pattern))
            mismatch = inner.refine({}, Formula((Disequal(result, target, bound),)))
            if mismatch is not None:
                self.translate(process.otherwise, mismatch)


def translate(process: Process, spec: Specification) -> List[HornClause]:
    """Protocol clauses of an instrumented process."""
    translator = ProcessTranslator(spec)
    translator.translate(process, _Context(subst={}))
    clauses = dedupe(c.canonical() for c in translator.clauses)
    logger.debug("Translated process into %d clauses", len(clauses))
    return clauses


def user_clauses(spec: Specification) -> List[HornClause]:
    """C_user as Horn clauses."""
    return [_from_user_clause(c, n) for n, c in enumerate(spec.clauses, start=1)]


def _from_user_clause(clause: UserClause, ordinal: int) -> HornClause:
    origin = f"clause {ordinal}" if clause.line is None else f"clause at line {clause.line}"
    return HornClause(clause.hypotheses, clause.conclusion, clause.formula, origin, ClauseKind.USER)
