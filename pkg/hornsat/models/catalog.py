"""Bundled transparency-log models and the transparent-decryption case study."""

import dataclasses
import logging
from pathlib import Path
from typing import Dict, List

from ..errors import ModelNotFoundError
from ..language.ast import Disjunct, Specification, Statement, StatementKind
from ..language.parser import parse_file
from ..terms.fact import Fact

logger = logging.getLogger(__name__)

MODELS_DIR = Path(__file__).resolve().parent

MODEL_IDS = (
    "hash_list",
    "hash_list_interface",
    "merkle_tree",
    "merkle_tree_interface",
    "transparent_decryption_interface",
    "transparent_decryption_concrete",
)

# Predicates abstracted by the log interface.
LOG_PREDICATES = frozenset({"represents", "verify_pp", "verify_pe"})

CASE_STUDY_MODES = ("concrete", "interface")


def model_path(model_id: str) -> Path:
    """Path of the `.hsl` file of a bundled model."""
    if model_id not in MODEL_IDS:
        raise ModelNotFoundError(
            f"Unknown model '{model_id}'. Available models: {', '.join(MODEL_IDS)}"
        )
    return MODELS_DIR / f"{model_id}.hsl"


def load_model(model_id: str) -> Specification:
    """Parse and validate a bundled model.

    Raises:
        ModelNotFoundError: If no bundled model has this id
    """
    spec = parse_file(model_path(model_id))
    logger.debug("Loaded model %s (%d clauses)", model_id, len(spec.clauses))
    return spec


def list_models() -> Dict[str, str]:
    """Bundled model ids with the first line of their header comment."""
    found = {}
    for model_id in MODEL_IDS:
        header = model_path(model_id).read_text(encoding="utf-8").lstrip()
        first = header.splitlines()[0] if header else ""
        found[model_id] = first.strip("(* ").rstrip("*) .")
    return found


def _blocking(fact: Fact) -> Fact:
    return fact.to_blocking() if fact.predicate in LOG_PREDICATES else fact


def interface_axioms(model_id: str) -> List[Statement]:
    """The interface properties of a log model rendered as axioms.

    Only the queries are kept; helper lemmas of the model stay private.
    Log predicates become blocking and the induction flag is dropped, so
    the axioms never conclude a fact that resolution could unfold.
    """
    if model_id.endswith("_interface"):
        model_id = model_id[: -len("_interface")]
    if model_id not in ("hash_list", "merkle_tree"):
        raise ModelNotFoundError(f"'{model_id}' is not a log model")
    axioms = []
    for query in load_model(f"{model_id}_interface").statements:
        if query.kind is not StatementKind.QUERY:
            continue
        axioms.append(
            dataclasses.replace(
                query,
                kind=StatementKind.AXIOM,
                premise=tuple(_blocking(f) for f in query.premise),
                conclusion=tuple(
                    Disjunct(tuple(_blocking(f) for f in d.facts), d.formula)
                    for d in query.conclusion
                ),
                induction=False,
            )
        )
    return axioms


def build_case_study(name: str, mode: str = "interface") -> Specification:
    """The transparent-decryption model.

    In `interface` mode the log predicates are declared blocking and the
    interface properties are axioms; in `concrete` mode the hash-list
    clauses define them.
    """
    if name != "transparent_decryption":
        raise ModelNotFoundError(f"Unknown case study '{name}'")
    if mode not in CASE_STUDY_MODES:
        raise ValueError(f"Unknown mode '{mode}'. Available modes: {', '.join(CASE_STUDY_MODES)}")
    return load_model(f"{name}_{mode}")
