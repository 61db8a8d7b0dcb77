"""Soundness harness: facts satisfied by bounded traces must be derivable."""

import logging
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional

from ..clauses.clause import ClauseKind, HornClause
from ..language.parser import parse_file
from ..saturation.engine import initial_clauses
from ..terms.fact import Fact
from ..utils.config import EngineSettings
from .enumerate import enumerate_derivable, universe_of
from .semantics import BoundedInterpreter, satisfied_facts

logger = logging.getLogger(__name__)

SMALL_MODELS = Path(__file__).resolve().parent.parent / "models" / "small"


def small_model_paths() -> List[Path]:
    return sorted(SMALL_MODELS.glob("*.hsl"))


def _axioms(facts: Iterable[Fact]) -> List[HornClause]:
    return [HornClause((), f.to_blocking(), origin="trace", kind=ClauseKind.USER) for f in facts]


def check_model(path: Path, settings: Optional[EngineSettings] = None) -> List[str]:
    """Violations found for one specification file."""
    settings = settings or EngineSettings()
    spec = parse_file(path)
    clauses = initial_clauses(spec)
    interpreter = BoundedInterpreter(spec, settings.step_budget, settings.attacker_depth)
    result = interpreter.run()
    if result.truncated:
        logger.info("%s: exploration truncated at %d steps", path.name, settings.step_budget)

    violations: List[str] = []
    checked: Dict[FrozenSet[Fact], bool] = {}
    for trace in result.traces:
        direct = satisfied_facts(trace)
        facts = frozenset(direct["labels"] + direct["attacker"])
        if facts in checked:
            continue
        terms = [a for f in facts for a in f.args]
        derivable = enumerate_derivable(
            clauses + _axioms(facts),
            universe_of(terms),
            settings.max_size,
            settings.max_universe,
        )
        missing = sorted((f for f in facts if f not in derivable), key=str)
        checked[facts] = not missing
        for fact in missing:
            violations.append(f"{path.name}: {fact} holds on a trace but is not derivable")
    logger.info("%s: %d traces, %d violations", path.name, len(result.traces), len(violations))
    return violations


def run_self_check(
    settings: Optional[EngineSettings] = None, paths: Optional[Iterable[Path]] = None
) -> List[str]:
    """Run the harness on the bundled small processes (or on `paths`)."""
    violations: List[str] = []
    for path in paths if paths is not None else small_model_paths():
        violations.extend(check_model(Path(path), settings))
    return violations
