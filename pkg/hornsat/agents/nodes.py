"""Nodes of the verification workflow."""

import logging
import time
from typing import Any, Dict

from .. import __version__
from ..generators.report_generator import ReportGenerator
from ..loaders.spec_loader import SpecificationLoader
from ..saturation.engine import initial_clauses
from ..solver.verify import StatementPipeline

logger = logging.getLogger(__name__)


class SpecificationLoadingNode:
    """Parses and validates the input specification."""

    def __call__(self, state: Dict[str, Any]) -> Dict[str, Any]:
        spec = SpecificationLoader.load(state["source"])
        logger.info(
            "Loaded %s: %d user clauses, %d statements",
            state["source"],
            len(spec.clauses),
            len(spec.statements),
        )
        return {"specification": spec}


class ClauseGenerationNode:
    """Instruments and translates the process, adding attacker and user clauses."""

    def __call__(self, state: Dict[str, Any]) -> Dict[str, Any]:
        clauses = initial_clauses(state["specification"])
        logger.info("Generated %d initial clauses", len(clauses))
        return {"clauses": clauses}


def _saturation_label(key) -> str:
    lemmas, inductive = key
    parts = [f"lemmas: {len(lemmas)}"]
    if inductive:
        parts.append("induction: " + "; ".join(inductive))
    return ", ".join(parts)


class StatementVerificationNode:
    """Verifies the statements in order, feeding proved lemmas forward."""

    def __call__(self, state: Dict[str, Any]) -> Dict[str, Any]:
        pipeline = StatementPipeline(state["specification"], state["settings"], state["clauses"])
        verdicts = pipeline.run(state.get("jobs") or 1)
        saturated = {
            _saturation_label(key): [str(c) for c in result.clauses]
            for key, result in pipeline.saturations.items()
        }
        return {"verdicts": verdicts, "saturated": saturated}


class ReportNode:
    """Collects verdicts and counters into a RunReport."""

    def __call__(self, state: Dict[str, Any]) -> Dict[str, Any]:
        report = ReportGenerator.build(
            state.get("verdicts") or [],
            source=state["source"],
            initial_clauses=len(state.get("clauses") or []),
            seconds=time.perf_counter() - state["started"],
            version=__version__,
        )
        return {"report": report}
