"""Verification of statements and the statement pipeline."""

import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..clauses.clause import HornClause
from ..errors import ResourceLimitExceeded
from ..language.ast import Specification, Statement, StatementKind
from ..saturation.context import SaturationContext
from ..saturation.engine import SaturationResult, initial_clauses, saturate
from ..utils.config import EngineSettings
from .conclusion import ConclusionChecker
from .ordered import OrderedSolver, build_query_clause

logger = logging.getLogger(__name__)


class Outcome(str, Enum):
    PROVED = "proved"
    DISPROVED = "disproved-candidate"
    INCONCLUSIVE = "inconclusive"
    ASSUMED = "assumed"


@dataclass
class VerificationVerdict:
    """Result of verifying one statement.

    `witnesses` holds, for each final ordered clause, its history and the
    proof found by the conclusion check; `failures` the clauses for which
    no proof was found.
    """

    label: str
    kind: StatementKind
    statement: str
    outcome: Outcome
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    failures: List[Dict[str, Any]] = field(default_factory=list)
    saturated_clauses: int = 0
    ordered_clauses: int = 0
    seconds: float = 0.0
    message: str = ""

    @property
    def proved(self) -> bool:
        return self.outcome is Outcome.PROVED


def verify_statement(
    statement: Statement,
    context: SaturationContext,
    saturated: SaturationResult,
    lemma_mode: Optional[bool] = None,
) -> VerificationVerdict:
    """Run the second phase for `statement` and check every final clause.

    Args:
        statement: Query or lemma to verify
        context: Predicate classes plus the active lemmas and inductive lemmas
        saturated: Result of the first phase under the same lemmas
        lemma_mode: Attacker facts of the conclusion must then occur in the
            hypotheses; defaults to whether the statement is a lemma.
    """
    if lemma_mode is None:
        lemma_mode = statement.kind is StatementKind.LEMMA
    started = time.perf_counter()
    verdict = VerificationVerdict(
        statement.label,
        statement.kind,
        str(statement),
        Outcome.PROVED,
        saturated_clauses=len(saturated.clauses),
    )
    solver = OrderedSolver(context, saturated)
    try:
        finals = solver.run(build_query_clause(statement, context))
    except ResourceLimitExceeded as exc:
        logger.warning("Statement %s: %s", statement.label or statement, exc)
        verdict.outcome = Outcome.INCONCLUSIVE
        verdict.message = str(exc)
        verdict.ordered_clauses = solver.processed
        verdict.seconds = time.perf_counter() - started
        return verdict

    checker = ConclusionChecker(statement, context, saturated, lemma_mode)
    for clause in finals:
        entry = {"clause": str(clause), "history": list(clause.history)}
        proof = checker.check(clause.facts, clause.formula, clause.conclusion)
        if proof is None:
            verdict.failures.append(entry)
        else:
            entry["proof"] = proof
            verdict.witnesses.append(entry)
    if verdict.failures:
        verdict.outcome = Outcome.DISPROVED
        verdict.message = f"{len(verdict.failures)} clause(s) do not imply the conclusion"
    verdict.ordered_clauses = solver.processed
    verdict.seconds = time.perf_counter() - started
    return verdict


SaturationKey = Tuple[Tuple[str, ...], Tuple[str, ...]]


class StatementPipeline:
    """Verifies the statements of a specification in order.

    Axioms are assumed from the start of their position onwards, proved
    lemmas are used by every later statement, and a statement flagged
    [induction] is verified with its own inductive hypothesis. The first
    phase is computed once per distinct pair of lemma sets.
    """

    def __init__(
        self,
        spec: Specification,
        settings: Optional[EngineSettings] = None,
        initial: Optional[Sequence[HornClause]] = None,
    ):
        self.spec = spec
        self.settings = settings or EngineSettings()
        self.base = SaturationContext.from_specification(spec, settings=self.settings)
        self.initial = list(initial) if initial is not None else initial_clauses(spec)
        self.saturations: Dict[SaturationKey, SaturationResult] = {}
        self._lock = threading.Lock()

    def saturated(
        self, lemmas: Sequence[Statement], inductive: Sequence[Statement]
    ) -> Tuple[SaturationContext, SaturationResult]:
        context = self.base.with_lemmas(lemmas, inductive)
        key = (tuple(str(s) for s in lemmas), tuple(str(s) for s in inductive))
        with self._lock:
            cached = self.saturations.get(key)
        if cached is None:
            cached = saturate(self.spec, context, self.initial)
            with self._lock:
                self.saturations.setdefault(key, cached)
        return context, cached

    def verify(self, statement: Statement, lemmas: Sequence[Statement]) -> VerificationVerdict:
        inductive = [statement.inductive_hypothesis()] if statement.induction else []
        started = time.perf_counter()
        try:
            context, saturated = self.saturated(lemmas, inductive)
        except ResourceLimitExceeded as exc:
            logger.warning("Saturation for %s stopped: %s", statement.label or statement, exc)
            return VerificationVerdict(
                statement.label,
                statement.kind,
                str(statement),
                Outcome.INCONCLUSIVE,
                seconds=time.perf_counter() - started,
                message=str(exc),
            )
        verdict = verify_statement(statement, context, saturated)
        verdict.seconds = time.perf_counter() - started
        logger.info("%s %s: %s", statement.kind.value, statement.label or statement, verdict.outcome.value)
        return verdict

    def run(self, jobs: int = 1) -> List[VerificationVerdict]:
        """Verdicts in statement order; queries run on `jobs` threads."""
        active: List[Statement] = []
        slots: List[Any] = []
        with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
            for statement in self.spec.statements:
                if statement.is_axiom:
                    active.append(statement)
                    slots.append(
                        VerificationVerdict(
                            statement.label, statement.kind, str(statement), Outcome.ASSUMED
                        )
                    )
                elif statement.kind is StatementKind.LEMMA:
                    verdict = self.verify(statement, tuple(active))
                    if verdict.proved:
                        active.append(statement)
                    slots.append(verdict)
                elif jobs > 1:
                    slots.append(pool.submit(self.verify, statement, tuple(active)))
                else:
                    slots.append(self.verify(statement, tuple(active)))
            return [s.result() if hasattr(s, "result") else s for s in slots]


def verify_specification(
    spec: Specification, settings: Optional[EngineSettings] = None, jobs: int = 1
) -> List[VerificationVerdict]:
    return StatementPipeline(spec, settings).run(jobs)
