"""Agents package: the verification workflow."""

from .state import VerificationState
from .workflow import VerificationWorkflow

__all__ = ["VerificationState", "VerificationWorkflow"]
