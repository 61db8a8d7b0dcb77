"""Clause generation: instrumentation, process translation and attacker clauses."""

from .attacker import attacker_clauses
from .clause import ClauseKind, HornClause
from .instrument import instrument
from .translate import translate, user_clauses

__all__ = [
    "ClauseKind",
    "HornClause",
    "attacker_clauses",
    "instrument",
    "translate",
    "user_clauses",
]
