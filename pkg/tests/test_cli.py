"""Tests for the command-line interface."""

import json

import pytest

from hornsat import __version__
from hornsat.main import main
from hornsat.models import MODELS_DIR

SMALL = MODELS_DIR / "small"


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    for name in ("HORNSAT_MAX_CLAUSES", "HORNSAT_MAX_STEPS", "HORNSAT_JOBS", "HORNSAT_LOG"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def relay_file(tmp_path):
    text = (SMALL / "private_relay.hsl").read_text(encoding="utf-8")
    statement = "query x: bitstring; event(Accepted(x)) ==> allowed(x).\n"
    path = tmp_path / "relay.hsl"
    path.write_text(text.replace("\nprocess\n", f"\n{statement}\nprocess\n", 1))
    return path


def test_models(capsys):
    """Test listing the bundled models."""
    assert main(["models"]) == 0

    out = capsys.readouterr().out
    assert "hash_list_interface" in out
    assert "transparent_decryption_concrete" in out


def test_version(capsys):
    """Test the --version flag."""
    with pytest.raises(SystemExit) as info:
        main(["--version"])

    assert info.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_no_command(capsys):
    """Test that a bare invocation prints help and fails."""
    assert main([]) == 1
    assert "usage: hornsat" in capsys.readouterr().out


def test_verify_needs_a_source(capsys):
    """Test that verify without a source is an input error."""
    assert main(["verify"]) == 1
    assert "needs a specification" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    """Test that a missing input exits with code 1."""
    assert main(["verify", str(tmp_path / "missing.hsl")]) == 1
    assert "File not found" in capsys.readouterr().out


def test_verify_text(relay_file, capsys):
    """Test the text report of a proved query."""
    assert main(["verify", str(relay_file)]) == 0

    out = capsys.readouterr().out
    assert "✓ query query_1: proved" in out
    assert "1/1 proved, status proved" in out


def test_verify_json(relay_file, capsys):
    """Test the JSON report."""
    assert main(["verify", str(relay_file), "--json", "--emit-clauses"]) == 0

    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert report["status"] == "proved"
    assert report["statements"][0]["label"] == "query_1"
    assert "Initial clauses" in captured.err


def test_emit_derivation(relay_file, tmp_path, capsys):
    """Test writing proofs to a file."""
    output = tmp_path / "proofs.json"

    assert main(["verify", str(relay_file), "--emit-derivation", str(output)]) == 0

    data = json.loads(output.read_text(encoding="utf-8"))
    assert data["query_1"]["outcome"] == "proved"
    assert data["query_1"]["witnesses"]


def test_invalid_limit(relay_file, capsys):
    """Test that an invalid override is an input error."""
    assert main(["verify", str(relay_file), "--max-clauses", "0"]) == 1
    assert "Invalid configuration value" in capsys.readouterr().err


def test_config_file_selects_json(relay_file, tmp_path, capsys):
    """Test that report.format in the config file switches to JSON."""
    config = tmp_path / "hornsat.yaml"
    config.write_text("report:\n  format: json\n")

    assert main(["verify", str(relay_file), "--config", str(config)]) == 0

    assert json.loads(capsys.readouterr().out)["exit_code"] == 0
