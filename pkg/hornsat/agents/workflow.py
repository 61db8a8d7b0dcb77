"""Verification workflow using LangGraph."""

import logging
import time
from typing import Optional

from langgraph.graph import END, StateGraph

from .. import __version__
from ..generators.report_generator import ReportGenerator
from ..utils.config import EngineSettings
from .nodes import (
    ClauseGenerationNode,
    ReportNode,
    SpecificationLoadingNode,
    StatementVerificationNode,
)
from .state import VerificationState

logger = logging.getLogger(__name__)


class VerificationWorkflow:
    """load -> generate_clauses -> verify -> report."""

    def __init__(self, settings: Optional[EngineSettings] = None, jobs: Optional[int] = None):
        """
        Initialize the verification workflow.

        Args:
            settings: Engine limits; defaults when None
            jobs: Number of queries verified in parallel; defaults to settings.jobs
        """
        self.settings = settings or EngineSettings()
        self.jobs = jobs or self.settings.jobs
        self.workflow = self._build_workflow()

    def _build_workflow(self):
        workflow = StateGraph(VerificationState)

        workflow.add_node("load", SpecificationLoadingNode())
        workflow.add_node("generate_clauses", ClauseGenerationNode())
        workflow.add_node("verify", StatementVerificationNode())
        workflow.add_node("report", ReportNode())

        workflow.set_entry_point("load")
        workflow.add_edge("load", "generate_clauses")
        workflow.add_edge("generate_clauses", "verify")
        workflow.add_edge("verify", "report")
        workflow.add_edge("report", END)

        return workflow.compile()

    def run(self, source: str) -> VerificationState:
        """
        Run the workflow on a specification.

        Args:
            source: Path to a `.hsl` file or a bundled model id

        Returns:
            Final state; `error` is set and `report` carries exit code 1 when
            the input could not be loaded or the run failed
        """
        initial_state: VerificationState = {
            "source": str(source),
            "settings": self.settings,
            "jobs": self.jobs,
            "started": time.perf_counter(),
            "specification": None,
            "clauses": None,
            "verdicts": None,
            "saturated": None,
            "report": None,
            "error": None,
        }

        try:
            return self.workflow.invoke(initial_state)
        except Exception as e:
            logger.debug("Workflow failed", exc_info=True)
            initial_state["error"] = str(e) or type(e).__name__
            initial_state["report"] = ReportGenerator.build(
                [],
                source=str(source),
                seconds=time.perf_counter() - initial_state["started"],
                version=__version__,
                error=initial_state["error"],
            )
            return initial_state
