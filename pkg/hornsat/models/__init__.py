"""Bundled models: transparency logs and the transparent-decryption protocol."""

from .catalog import (
    LOG_PREDICATES,
    MODEL_IDS,
    MODELS_DIR,
    build_case_study,
    interface_axioms,
    list_models,
    load_model,
    model_path,
)

__all__ = [
    "LOG_PREDICATES",
    "MODEL_IDS",
    "MODELS_DIR",
    "build_case_study",
    "interface_axioms",
    "list_models",
    "load_model",
    "model_path",
]
