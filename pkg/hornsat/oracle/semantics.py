"""Bounded operational semantics of instrumented processes.

Deterministic steps (parallel composition, lets, events, outputs to the
attacker) are taken eagerly; replication, attacker inputs and private
communications branch and each consume one step of the budget.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from ..clauses import instrument
from ..clauses.attacker import ATTACKER_NAME
from ..clauses.clause import HornClause
from ..clauses.translate import user_clauses
from ..errors import EvaluationError
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
    Specification,
    pattern_term,
)
from ..terms.evaluate import evaluate_ground
from ..terms.fact import ATTACKER, EVENT, MESSAGE, Fact, event, message
from ..terms.formula import normalize
from ..terms.symbols import Signature
from ..terms.term import (
    Fail,
    FreshVariables,
    Fun,
    Name,
    Substitution,
    Term,
    Var,
    apply_subst,
    is_ground,
    size,
)
from ..terms.unify import match_terms, unify_sequences

logger = logging.getLogger(__name__)

Environment = Tuple[Tuple[Var, Term], ...]
Thread = Tuple[Process, Environment]

ATTACKER_SESSION = Name("sid_att")


@dataclass(frozen=True)
class Configuration:
    """Running threads, attacker knowledge and the number of sessions opened."""

    threads: Tuple[Thread, ...]
    knowledge: FrozenSet[Term]
    sessions: int = 0


@dataclass(frozen=True)
class Trace:
    labels: Tuple[Fact, ...]
    final: Configuration

    @property
    def events(self) -> List[Fact]:
        return [f for f in self.labels if f.predicate == EVENT]


@dataclass
class SemanticsResult:
    traces: List[Trace] = field(default_factory=list)
    truncated: bool = False


def attacker_closure(
    knowledge: Sequence[Term], signature: Signature, depth: int, limit: int = 400
) -> Set[Term]:
    """Terms the attacker builds from `knowledge` in `depth` rounds of
    public function application, at most `limit` of them."""
    known: Set[Term] = set(knowledge)
    symbols = [s for s in signature if not s.private and s.arity > 0]
    for _ in range(depth):
        current = sorted(known, key=lambda t: (size(t), str(t)))
        added: Set[Term] = set()
        for symbol in symbols:
            for args in itertools.product(current, repeat=symbol.arity):
                try:
                    value = evaluate_ground(Fun(symbol.name, args), signature)
                except EvaluationError:
                    continue
                if not isinstance(value, Fail) and value not in known:
                    added.add(value)
                if len(known) + len(added) >= limit:
                    return known | added
        if not added:
            break
        known |= added
    return known


def solve_user_goal(
    goal: Fact, clauses: Sequence[HornClause], depth: int, subst: Optional[Substitution] = None
) -> Iterator[Substitution]:
    """SLD resolution of `goal` against C_user, bounded by `depth`."""
    fresh = FreshVariables(10_000)
    yield from _solve([goal], clauses, depth, dict(subst or {}), fresh)


def _solve(goals, clauses, depth, subst, fresh) -> Iterator[Substitution]:
    if not goals:
        yield subst
        return
    if depth == 0:
        return
    first, rest = goals[0], goals[1:]
    for clause in clauses:
        if clause.conclusion.predicate != first.predicate:
            continue
        renaming = fresh.renaming(sorted(clause.vars(), key=lambda v: (v.name, v.index)))
        renamed = clause.rename(renaming)
        extended = unify_sequences(first.args, renamed.conclusion.args, subst)
        if extended is None:
            continue
        if not renamed.formula.is_true:
            solved = normalize(renamed.formula.apply(extended))
            if solved is None:
                continue
            if not solved[1].is_true:
                continue
        yield from _solve(list(renamed.hypotheses) + rest, clauses, depth - 1, extended, fresh)


class BoundedInterpreter:
    """Explores every trace of a specification up to `step_budget` branching steps."""

    def __init__(
        self,
        spec: Specification,
        step_budget: int = 6,
        attacker_depth: int = 2,
        max_inputs: int = 12,
        user_depth: int = 8,
    ):
        self.spec = spec
        self.step_budget = step_budget
        self.attacker_depth = attacker_depth
        self.max_inputs = max_inputs
        self.user_depth = user_depth
        self.user_clauses = user_clauses(spec)
        self.result = SemanticsResult()
        self._seen: Set[Tuple] = set()

    def initial(self) -> Configuration:
        knowledge = {n.term for n in self.spec.public_names()}
        knowledge.add(Name(ATTACKER_NAME, (ATTACKER_SESSION,)))
        return Configuration(((instrument(self.spec.process), ()),), frozenset(knowledge))

    def run(self) -> SemanticsResult:
        for config, labels in self._settle(self.initial(), ()):
            self._explore(config, labels, 0)
        logger.debug("Explored %d traces", len(self.result.traces))
        return self.result

    # eager steps

    def _is_public(self, channel: Term, knowledge: FrozenSet[Term]) -> bool:
        return self.spec.is_public_channel(channel) or channel in knowledge

    def _value(self, term: Term, env: Substitution) -> Optional[Term]:
        term = apply_subst(env, term)
        if not is_ground(term):
            return None
        try:
            return evaluate_ground(term, self.spec.signature)
        except EvaluationError:
            return None

    def _event_atom(self, atom: Term, env: Substitution) -> Optional[Term]:
        """The atom with its arguments evaluated; None when one of them fails."""
        if not isinstance(atom, Fun):
            return None
        args = [self._value(a, env) for a in atom.args]
        if any(a is None or isinstance(a, Fail) for a in args):
            return None
        return Fun(atom.symbol, tuple(args))

    def _settle(
        self, config: Configuration, labels: Tuple[Fact, ...]
    ) -> List[Tuple[Configuration, Tuple[Fact, ...]]]:
        """Apply deterministic steps until only branching steps remain."""
        pending = [(config, labels)]
        settled = []
        while pending:
            current, trail = pending.pop()
            step = self._eager_step(current, trail)
            if step is None:
                settled.append((current, trail))
            else:
                pending.extend(step)
        return settled

    def _eager_step(self, config: Configuration, labels: Tuple[Fact, ...]):
        for position, (process, env_items) in enumerate(config.threads):
            env = dict(env_items)
            others = config.threads[:position] + config.threads[position + 1:]

            def replaced(*threads: Thread, knowledge=config.knowledge) -> Configuration:
                return Configuration(others + threads, knowledge, config.sessions)

            if isinstance(process, Nil):
                return [(replaced(), labels)]
            if isinstance(process, Parallel):
                return [(replaced((process.left, env_items), (process.right, env_items)), labels)]
            if isinstance(process, EventProcess):
                atom = self._event_atom(process.atom, env)
                if atom is None:
                    logger.debug("Thread blocked on event %s", process.atom)
                    return [(replaced(), labels)]
                return [(replaced((process.then, env_items)), labels + (event(atom),))]
            if isinstance(process, Output):
                channel = self._value(process.channel, env)
                payload = self._value(process.message, env)
                if channel is None or payload is None or isinstance(payload, Fail):
                    return [(replaced(), labels)]
                if self._is_public(channel, config.knowledge):
                    knowledge = config.knowledge | {payload}
                    successor = replaced((process.then, env_items), knowledge=knowledge)
                    return [(successor, labels + (message(channel, payload),))]
            if isinstance(process, LetExpression):
                return [(replaced(*self._let(process, env)), labels)]
            if isinstance(process, LetSuchThat):
                return [(replaced(thread), labels) for thread in self._such_that(process, env)]
        return None

    def _let(self, process: LetExpression, env: Substitution) -> List[Thread]:
        value = self._value(process.expression, env)
        if value is None or isinstance(value, Fail):
            return [(process.otherwise, tuple(env.items()))]
        pattern = self._pattern(pattern_term(process.pattern), env)
        matched = None if pattern is None else match_terms(pattern, value)
        if matched is None:
            return [(process.otherwise, tuple(env.items()))]
        extended = dict(env)
        extended.update(matched)
        return [(process.then, tuple(extended.items()))]

    def _pattern(self, term: Term, env: Substitution) -> Optional[Term]:
        """The pattern with its `=M` parts evaluated; variables stay free."""
        if isinstance(term, Var):
            return env.get(term, term)
        if isinstance(term, Fun) and self.spec.signature.get(term.symbol).builds_terms:
            args = [self._pattern(a, env) for a in term.args]
            if any(a is None for a in args):
                return None
            return Fun(term.symbol, tuple(args))
        value = self._value(term, env)
        return None if value is None or isinstance(value, Fail) else value

    def _such_that(self, process: LetSuchThat, env: Substitution) -> List[Thread]:
        goal = process.condition.apply(env).to_plain()
        threads = []
        seen = set()
        for found in solve_user_goal(goal, self.user_clauses, self.user_depth):
            binding = {v: apply_subst(found, v) for v in process.variables}
            if not all(is_ground(t) for t in binding.values()):
                continue
            if not all(is_ground(apply_subst(found, a)) for a in goal.args):
                continue
            key = tuple(sorted((str(v), str(t)) for v, t in binding.items()))
            if key in seen:
                continue
            seen.add(key)
            extended = dict(env)
            extended.update(binding)
            threads.append((process.then, tuple(extended.items())))
            if len(threads) >= self.max_inputs:
                self.result.truncated = True
                break
        if not threads:
            threads.append((process.otherwise, tuple(env.items())))
        return threads

    # branching steps

    def _branches(self, config: Configuration) -> Iterator[Tuple[Configuration, Tuple[Fact, ...]]]:
        candidates: Optional[List[Term]] = None
        for position, (process, env_items) in enumerate(config.threads):
            env = dict(env_items)
            others = config.threads[:position] + config.threads[position + 1:]
            if isinstance(process, Replication):
                session = Name(f"sid{config.sessions}")
                body_env = dict(env)
                if process.session is not None:
                    body_env[process.session] = session
                yield Configuration(
                    others + ((process.body, tuple(body_env.items())), (process, env_items)),
                    config.knowledge,
                    config.sessions + 1,
                ), ()
            elif isinstance(process, Input):
                channel = self._value(process.channel, env)
                if channel is None:
                    continue
                if self._is_public(channel, config.knowledge):
                    if candidates is None:
                        candidates = self._input_candidates(config.knowledge)
                    for value in candidates:
                        bound = dict(env)
                        bound[process.variable] = value
                        yield Configuration(
                            others + ((process.then, tuple(bound.items())),),
                            config.knowledge,
                            config.sessions,
                        ), ()
                    continue
                for other, (sender, sender_env) in enumerate(config.threads):
                    if other == position or not isinstance(sender, Output):
                        continue
                    senv = dict(sender_env)
                    if self._value(sender.channel, senv) != channel:
                        continue
                    payload = self._value(sender.message, senv)
                    if payload is None or isinstance(payload, Fail):
                        continue
                    bound = dict(env)
                    bound[process.variable] = payload
                    rest = tuple(
                        t for k, t in enumerate(config.threads) if k not in (position, other)
                    )
                    yield Configuration(
                        rest + ((process.then, tuple(bound.items())), (sender.then, sender_env)),
                        config.knowledge,
                        config.sessions,
                    ), (message(channel, payload),)

    def _input_candidates(self, knowledge: FrozenSet[Term]) -> List[Term]:
        closure = attacker_closure(sorted(knowledge, key=str), self.spec.signature, 1)
        ordered = sorted(closure, key=lambda t: (size(t), str(t)))
        if len(ordered) > self.max_inputs:
            self.result.truncated = True
        return ordered[: self.max_inputs]

    def _explore(self, config: Configuration, labels: Tuple[Fact, ...], steps: int) -> None:
        key = (frozenset(labels), config.knowledge, steps)
        if key not in self._seen:
            self._seen.add(key)
            self.result.traces.append(Trace(labels, config))
        branches = list(self._branches(config))
        if steps >= self.step_budget:
            if branches:
                self.result.truncated = True
            return
        for successor, added in branches:
            for settled, trail in self._settle(successor, labels + added):
                self._explore(settled, trail, steps + 1)


def run_bounded_semantics(
    spec: Specification, step_budget: int = 6, attacker_depth: int = 2
) -> SemanticsResult:
    """Every trace of `spec` within `step_budget` branching steps."""
    return BoundedInterpreter(spec, step_budget, attacker_depth).run()


def check_trace_satisfies(
    trace: Trace, fact: Fact, spec: Specification, attacker_depth: int = 2
) -> bool:
    """Whether `trace` satisfies `fact`; blocking forms count as their plain fact."""
    fact = fact.to_plain()
    if fact.predicate in (EVENT, MESSAGE):
        return fact in trace.labels
    if fact.predicate == ATTACKER:
        if isinstance(fact.args[0], Fail):
            return True
        knowledge = sorted(trace.final.knowledge, key=str)
        closure = attacker_closure(knowledge, spec.signature, attacker_depth)
        return fact.args[0] in closure
    clauses = user_clauses(spec)
    return next(solve_user_goal(fact, clauses, 8), None) is not None


def satisfied_facts(trace: Trace) -> Dict[str, List[Fact]]:
    """Facts a trace satisfies directly: its labels and the attacker's knowledge."""
    known = [Fact(ATTACKER, (t,)) for t in sorted(trace.final.knowledge, key=str)]
    return {"labels": list(trace.labels), "attacker": known}
