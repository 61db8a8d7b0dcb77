"""Ground-truth checks: derivations, bounded enumeration and bounded traces."""

from .derivation import Derivation, check_derivation
from .enumerate import enumerate_derivable, minimal_sizes, universe_of
from .harness import run_self_check
from .semantics import (
    BoundedInterpreter,
    Configuration,
    Trace,
    check_trace_satisfies,
    run_bounded_semantics,
)

__all__ = [
    "BoundedInterpreter",
    "Configuration",
    "Derivation",
    "Trace",
    "check_derivation",
    "check_trace_satisfies",
    "enumerate_derivable",
    "minimal_sizes",
    "run_bounded_semantics",
    "run_self_check",
    "universe_of",
]
