"""Generators package."""

from .report_generator import ReportGenerator, RunReport, StatementReport, exit_code_for

__all__ = ["ReportGenerator", "RunReport", "StatementReport", "exit_code_for"]
