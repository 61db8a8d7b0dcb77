"""First-phase saturation of the Horn clause set."""

from .context import SaturationContext
from .engine import SaturationEngine, SaturationResult, initial_clauses, resolve, saturate
from .lemmas import LemmaApplier, rename_statement
from .selection import SelectionFunction
from .simplify import simplify
from .subsumption import subsumes

__all__ = [
    "LemmaApplier",
    "SaturationContext",
    "SaturationEngine",
    "SaturationResult",
    "SelectionFunction",
    "initial_clauses",
    "rename_statement",
    "resolve",
    "saturate",
    "simplify",
    "subsumes",
]
