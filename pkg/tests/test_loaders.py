"""Tests for specification loaders."""

from pathlib import Path

import pytest

from hornsat.errors import ModelNotFoundError, SpecificationError
from hornsat.loaders import SpecificationLoader
from hornsat.models import MODELS_DIR, load_model

SMALL = MODELS_DIR / "small"


def test_hsl_loader(tmp_path):
    """Test loading a .hsl file."""
    test_file = tmp_path / "relay.hsl"
    test_file.write_text((SMALL / "private_relay.hsl").read_text(encoding="utf-8"))

    spec = SpecificationLoader.load(test_file)

    assert spec.clause_defined == {"allowed"}
    assert len(spec.clauses) == 1


def test_bundled_model_id():
    """Test that a model id resolves to the bundled file."""
    assert SpecificationLoader.resolve("hash_list") == "hash_list"

    spec = SpecificationLoader.load("hash_list_interface")

    assert spec.statements


def test_path_wins_over_model_id(tmp_path, monkeypatch):
    """Test that an existing file named like a model is read as a path."""
    monkeypatch.chdir(tmp_path)
    (tmp_path / "hash_list").write_text("free c: channel.\n")

    assert SpecificationLoader.resolve("hash_list") == Path("hash_list")


def test_unsupported_format(tmp_path):
    """Test that unsupported formats raise ValueError."""
    test_file = tmp_path / "protocol.pv"
    test_file.write_text("free c: channel.\n")

    with pytest.raises(ValueError, match="Unsupported file format: .pv"):
        SpecificationLoader.load(test_file)


def test_missing_suffix(tmp_path):
    """Test the message for a file without a suffix."""
    test_file = tmp_path / "protocol"
    test_file.write_text("free c: channel.\n")

    with pytest.raises(ValueError, match=r"\(none\)"):
        SpecificationLoader.load(test_file)


def test_file_not_found():
    """Test that missing files raise FileNotFoundError."""
    with pytest.raises(FileNotFoundError, match="File not found"):
        SpecificationLoader.load("/nonexistent/protocol.hsl")


def test_invalid_specification(tmp_path):
    """Test that parse errors surface as SpecificationError."""
    test_file = tmp_path / "broken.hsl"
    test_file.write_text("fun f(bitstring: bitstring.\n")

    with pytest.raises(SpecificationError, match="E001"):
        SpecificationLoader.load(test_file)


def test_unknown_model_is_not_a_model_error(tmp_path):
    """Test that an unknown id is treated as a missing path."""
    with pytest.raises(FileNotFoundError):
        SpecificationLoader.load("no_such_model")
    with pytest.raises(ModelNotFoundError):
        load_model("no_such_model")
