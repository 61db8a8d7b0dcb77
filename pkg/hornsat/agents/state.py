"""State carried through the verification workflow."""

from typing import Dict, List, Optional, TypedDict

from ..clauses.clause import HornClause
from ..generators.report_generator import RunReport
from ..language.ast import Specification
from ..solver.verify import VerificationVerdict
from ..utils.config import EngineSettings


class VerificationState(TypedDict):
    """State shared across all nodes of the workflow."""

    # Input
    source: str
    settings: EngineSettings
    jobs: int
    started: float

    # Processing stages
    specification: Optional[Specification]
    clauses: Optional[List[HornClause]]
    verdicts: Optional[List[VerificationVerdict]]
    saturated: Optional[Dict[str, List[str]]]  # lemma sets -> saturated clauses

    # Output
    report: Optional[RunReport]

    # Metadata
    error: Optional[str]
