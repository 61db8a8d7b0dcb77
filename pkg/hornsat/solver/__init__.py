"""Second phase: ordered saturation of a statement and the conclusion check."""

from .conclusion import ConclusionChecker
from .ordered import OrderedClause, OrderedFact, OrderedSolver, build_query_clause, resolve_ordered
from .ordering import OrderingFunction, Relation, Strictness, check_equal_strict, delta_res
from .verify import (
    Outcome,
    StatementPipeline,
    VerificationVerdict,
    verify_specification,
    verify_statement,
)

__all__ = [
    "ConclusionChecker",
    "OrderedClause",
    "OrderedFact",
    "OrderedSolver",
    "OrderingFunction",
    "Outcome",
    "Relation",
    "StatementPipeline",
    "Strictness",
    "VerificationVerdict",
    "build_query_clause",
    "check_equal_strict",
    "delta_res",
    "resolve_ordered",
    "verify_specification",
    "verify_statement",
]
