"""Tests for the report generator."""

import json

import pytest

from hornsat.generators import ReportGenerator, exit_code_for
from hornsat.language import StatementKind
from hornsat.solver import Outcome, VerificationVerdict


def verdict(label, outcome, kind=StatementKind.QUERY, **fields):
    return VerificationVerdict(
        label=label, kind=kind, statement=f"{label} statement", outcome=outcome, **fields
    )


@pytest.fixture
def mixed():
    return [
        verdict("axiom_1", Outcome.ASSUMED, kind=StatementKind.AXIOM),
        verdict("P1", Outcome.PROVED, kind=StatementKind.LEMMA, seconds=0.25),
        verdict(
            "query_1",
            Outcome.DISPROVED,
            failures=[{"clause": "-> event(Received(s))"}],
            message="1 clause(s) do not imply the conclusion",
        ),
    ]


def test_exit_codes():
    """Test the exit code of each combination of outcomes."""
    assert exit_code_for([]) == 0
    assert exit_code_for([verdict("a", Outcome.PROVED), verdict("b", Outcome.ASSUMED)]) == 0
    assert exit_code_for([verdict("a", Outcome.INCONCLUSIVE)]) == 2
    assert exit_code_for([verdict("a", Outcome.INCONCLUSIVE), verdict("b", Outcome.DISPROVED)]) == 3


def test_report_build(mixed):
    """Test building a RunReport from verdicts."""
    report = ReportGenerator.build(mixed, source="relay.hsl", initial_clauses=12, version="1.0")

    assert report.status == "disproved-candidate"
    assert report.exit_code == 3
    assert [s.kind for s in report.statements] == ["axiom", "lemma", "query"]
    assert report.statements[2].failures == ["-> event(Received(s))"]


def test_error_report():
    """Test that an error yields exit code 1."""
    report = ReportGenerator.build([], source="missing.hsl", error="File not found: missing.hsl")

    assert report.exit_code == 1
    assert report.status == "error"
    assert ReportGenerator.to_text(report) == "✗ File not found: missing.hsl"


def test_text_report(mixed):
    """Test the text rendering of a report."""
    text = ReportGenerator.to_text(ReportGenerator.build(mixed))

    lines = text.splitlines()
    assert lines[0] == "· axiom axiom_1: assumed"
    assert lines[1] == "✓ lemma P1: proved (0.25s)"
    assert lines[2].startswith("✗ query query_1: disproved-candidate")
    assert lines[2].endswith("- 1 clause(s) do not imply the conclusion")
    assert lines[3] == "    not implied: -> event(Received(s))"
    assert lines[-1] == "1/2 proved, status disproved-candidate"


def test_json_report(mixed):
    """Test that the JSON rendering carries every statement."""
    data = json.loads(ReportGenerator.to_json(ReportGenerator.build(mixed, version="1.0")))

    assert data["tool"] == "hornsat"
    assert data["exit_code"] == 3
    assert [s["label"] for s in data["statements"]] == ["axiom_1", "P1", "query_1"]


def test_write_report(tmp_path, mixed):
    """Test writing a report to a file."""
    output = tmp_path / "report.json"

    content = ReportGenerator.write(ReportGenerator.build(mixed), str(output), as_json=True)

    assert output.read_text(encoding="utf-8") == content + "\n"
    assert json.loads(content)["status"] == "disproved-candidate"
