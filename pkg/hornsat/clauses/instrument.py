"""Instrumentation: session identifiers on replications, name patterns for restrictions."""

from typing import Callable, Optional, Tuple

from ..language.ast import (
    EventProcess,
    Input,
    LetExpression,
    LetSuchThat,
    Nil,
    Output,
    Parallel,
    PatternData,
    PatternEqual,
    PatternVar,
    Process,
    Replication,
    Restriction,
)
from ..terms.symbols import SESSION_SORT
from ..terms.term import FreshVariables, Fun, Name, Term, Var

TermMap = Callable[[Term], Term]


def replace_name(term: Term, symbol: str, replacement: Term) -> Term:
    """Replace the free name `symbol` by `replacement` everywhere in `term`."""
    if isinstance(term, Name):
        if term.symbol == symbol and not term.args:
            return replacement
        if term.args:
            return Name(term.symbol, tuple(replace_name(a, symbol, replacement) for a in term.args))
        return term
    if isinstance(term, Fun) and term.args:
        return Fun(term.symbol, tuple(replace_name(a, symbol, replacement) for a in term.args))
    return term


def _map_pattern(pattern, fn: TermMap):
    if isinstance(pattern, PatternVar):
        return pattern
    if isinstance(pattern, PatternEqual):
        return PatternEqual(fn(pattern.term))
    return PatternData(pattern.symbol, tuple(_map_pattern(p, fn) for p in pattern.args))


def map_terms(process: Process, fn: TermMap) -> Process:
    """Apply `fn` to every term occurring in the process."""
    if isinstance(process, Nil):
        return process
    if isinstance(process, Parallel):
        return Parallel(map_terms(process.left, fn), map_terms(process.right, fn))
    if isinstance(process, Replication):
        return Replication(map_terms(process.body, fn), process.session)
    if isinstance(process, Restriction):
        return Restriction(process.name, process.sort, map_terms(process.then, fn))
    if isinstance(process, Output):
        return Output(fn(process.channel), fn(process.message), map_terms(process.then, fn))
    if isinstance(process, Input):
        return Input(fn(process.channel), process.variable, map_terms(process.then, fn))
    if isinstance(process, EventProcess):
        return EventProcess(fn(process.atom), map_terms(process.then, fn))
    if isinstance(process, LetExpression):
        return LetExpression(
            _map_pattern(process.pattern, fn),
            fn(process.expression),
            map_terms(process.then, fn),
            map_terms(process.otherwise, fn),
        )
    if isinstance(process, LetSuchThat):
        condition = process.condition
        mapped = type(condition)(
            condition.predicate, tuple(fn(a) for a in condition.args), condition.blocked
        )
        return LetSuchThat(
            process.variables,
            mapped,
            map_terms(process.then, fn),
            map_terms(process.otherwise, fn),
        )
    raise TypeError(f"Not a process: {process!r}")


def instrument(process: Process, fresh: Optional[FreshVariables] = None) -> Process:
    """Give every replication a session variable and turn every `new k` into k[I].

    I lists the session variables and input variables in scope at the
    restriction, outermost first.
    """
    return _instrument(process, (), fresh or FreshVariables())


def _instrument(process: Process, scope: Tuple[Var, ...], fresh: FreshVariables) -> Process:
    if isinstance(process, Nil):
        return process
    if isinstance(process, Parallel):
        return Parallel(_instrument(process.left, scope, fresh), _instrument(process.right, scope, fresh))
    if isinstance(process, Replication):
        session = process.session or fresh.var("i", SESSION_SORT)
        return Replication(_instrument(process.body, scope + (session,), fresh), session)
    if isinstance(process, Restriction):
        pattern = Name(process.name, scope)
        body = map_terms(process.then, lambda t: replace_name(t, process.name, pattern))
        return _instrument(body, scope, fresh)
    if isinstance(process, Input):
        return Input(
            process.channel, process.variable, _instrument(process.then, scope + (process.variable,), fresh)
        )
    if isinstance(process, Output):
        return Output(process.channel, process.message, _instrument(process.then, scope, fresh))
    if isinstance(process, EventProcess):
        return EventProcess(process.atom, _instrument(process.then, scope, fresh))
    if isinstance(process, LetExpression):
        return LetExpression(
            process.pattern,
            process.expression,
            _instrument(process.then, scope, fresh),
            _instrument(process.otherwise, scope, fresh),
        )
    if isinstance(process, LetSuchThat):
        return LetSuchThat(
            process.variables,
            process.condition,
            _instrument(process.then, scope, fresh),
            _instrument(process.otherwise, scope, fresh),
        )
    raise TypeError(f"Not a process: {process!r}")
