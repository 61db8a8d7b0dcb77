"""Text and JSON reports of a verification run."""

from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import BaseModel, Field

from ..solver.verify import Outcome, VerificationVerdict

EXIT_PROVED = 0
EXIT_INPUT_ERROR = 1
EXIT_INCONCLUSIVE = 2
EXIT_DISPROVED = 3

MARKS = {
    Outcome.PROVED: "✓",
    Outcome.DISPROVED: "✗",
    Outcome.INCONCLUSIVE: "⚠",
    Outcome.ASSUMED: "·",
}


class StatementReport(BaseModel):
    """Verdict of one query, lemma or axiom."""

    label: str
    kind: str
    statement: str
    outcome: str
    saturated_clauses: int = 0
    ordered_clauses: int = 0
    seconds: float = 0.0
    message: str = ""
    failures: List[str] = Field(default_factory=list)


class RunReport(BaseModel):
    """Everything `hornsat verify` reports about one input."""

    tool: str = "hornsat"
    version: str = ""
    source: str = ""
    status: str = "proved"
    exit_code: int = EXIT_PROVED
    initial_clauses: int = 0
    statements: List[StatementReport] = Field(default_factory=list)
    seconds: float = 0.0
    error: Optional[str] = None


def exit_code_for(verdicts: Sequence[VerificationVerdict]) -> int:
    """0 when every lemma and query is proved; a disproved candidate wins over inconclusive."""
    outcomes = {v.outcome for v in verdicts}
    if Outcome.DISPROVED in outcomes:
        return EXIT_DISPROVED
    if Outcome.INCONCLUSIVE in outcomes:
        return EXIT_INCONCLUSIVE
    return EXIT_PROVED


STATUS = {
    EXIT_PROVED: "proved",
    EXIT_INPUT_ERROR: "error",
    EXIT_INCONCLUSIVE: "inconclusive",
    EXIT_DISPROVED: "disproved-candidate",
}


class ReportGenerator:
    """Builds a RunReport from verdicts and renders it."""

    @classmethod
    def build(
        cls,
        verdicts: Sequence[VerificationVerdict],
        source: str = "",
        initial_clauses: int = 0,
        seconds: float = 0.0,
        version: str = "",
        error: Optional[str] = None,
    ) -> RunReport:
        code = EXIT_INPUT_ERROR if error else exit_code_for(verdicts)
        return RunReport(
            version=version,
            source=source,
            status=STATUS[code],
            exit_code=code,
            initial_clauses=initial_clauses,
            statements=[cls._statement(v) for v in verdicts],
            seconds=round(seconds, 3),
            error=error,
        )

    @staticmethod
    def _statement(verdict: VerificationVerdict) -> StatementReport:
        return StatementReport(
            label=verdict.label,
            kind=verdict.kind.value,
            statement=verdict.statement,
            outcome=verdict.outcome.value,
            saturated_clauses=verdict.saturated_clauses,
            ordered_clauses=verdict.ordered_clauses,
            seconds=round(verdict.seconds, 3),
            message=verdict.message,
            failures=[f["clause"] for f in verdict.failures],
        )

    @staticmethod
    def to_text(report: RunReport) -> str:
        """One line per statement followed by a summary line."""
        lines = []
        for entry in report.statements:
            mark = MARKS[Outcome(entry.outcome)]
            line = f"{mark} {entry.kind} {entry.label}: {entry.outcome}"
            if entry.outcome != Outcome.ASSUMED.value:
                line += f" ({entry.seconds:.2f}s)"
            if entry.message:
                line += f" - {entry.message}"
            lines.append(line)
            for clause in entry.failures:
                lines.append(f"    not implied: {clause}")
        if report.error:
            lines.append(f"✗ {report.error}")
        else:
            checked = [s for s in report.statements if s.outcome != Outcome.ASSUMED.value]
            proved = sum(1 for s in checked if s.outcome == Outcome.PROVED.value)
            lines.append(f"{proved}/{len(checked)} proved, status {report.status}")
        return "\n".join(lines)

    @staticmethod
    def to_json(report: RunReport) -> str:
        return report.model_dump_json(indent=2)

    @classmethod
    def write(cls, report: RunReport, output_path: str, as_json: bool = False) -> str:
        content = cls.to_json(report) if as_json else cls.to_text(report)
        Path(output_path).write_text(content + "\n", encoding="utf-8")
        return content
