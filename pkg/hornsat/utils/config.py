"""Configuration management for hornsat."""

import copy
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, ValidationError

logger = logging.getLogger(__name__)

# Default configuration values
DEFAULT_CONFIG: Dict[str, Any] = {
    "engine": {
        "max_clauses": 200_000,
        "max_steps": 1_000_000,
        "keep_blocking_variant": True,
        "lemma_rounds": 16,
    },
    "solver": {
        "unfold_budget": 1,
        "standard_budget": 6,
        "max_ordered_clauses": 20_000,
        "search_depth": 6,
        "inversion_depth": 2,
    },
    "oracle": {
        "max_universe": 400,
        "max_size": 8,
        "step_budget": 6,
        "attacker_depth": 2,
    },
    "report": {"format": "text"},
    "jobs": 1,
}

# Environment variable -> (section, key); section None means top level
ENV_OVERRIDES = {
    "HORNSAT_MAX_CLAUSES": ("engine", "max_clauses"),
    "HORNSAT_MAX_STEPS": ("engine", "max_steps"),
    "HORNSAT_JOBS": (None, "jobs"),
}


class EngineSettings(BaseModel):
    """Validated view of the configuration used by the engine and solver."""

    max_clauses: int = Field(200_000, gt=0)
    max_steps: int = Field(1_000_000, gt=0)
    keep_blocking_variant: bool = True
    lemma_rounds: int = Field(16, ge=0)
    unfold_budget: int = Field(1, ge=0)
    standard_budget: int = Field(6, ge=0)
    max_ordered_clauses: int = Field(20_000, gt=0)
    search_depth: int = Field(6, ge=1)
    inversion_depth: int = Field(2, ge=0)
    max_universe: int = Field(400, gt=0)
    max_size: int = Field(8, gt=0)
    step_budget: int = Field(6, ge=0)
    attacker_depth: int = Field(2, ge=0)
    jobs: int = Field(1, gt=0)

    model_config = {"frozen": True}


def _find_config_file() -> Optional[Path]:
    """
    Find the configuration file in common locations.

    Searches in order:
    1. Current working directory
    2. User's home directory
    3. Repository root

    Returns:
        Path to config file if found, None otherwise
    """
    config_names = ["hornsat.yaml", "hornsat.yml", "config.yaml", "config.yml"]

    search_paths = [
        Path.cwd(),
        Path.home(),
        Path(__file__).parent.parent.parent,  # Repository root
    ]

    for search_path in search_paths:
        for config_name in config_names:
            config_path = search_path / config_name
            if config_path.exists():
                return config_path

    return None


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load configuration from YAML file.

    Args:
        config_path: Optional path to config file. If not provided,
                    searches for config file in common locations.

    Returns:
        Configuration dictionary with engine, solver and oracle settings
    """
    config = copy.deepcopy(DEFAULT_CONFIG)

    if config_path:
        path = Path(config_path)
    else:
        path = _find_config_file()

    if path and path.exists():
        try:
            import yaml

            with open(path, "r") as f:
                file_config = yaml.safe_load(f)
                if file_config:
                    config = _merge_config(config, file_config)
        except ImportError:
            logger.warning("PyYAML not installed. Using default configuration.")
        except Exception as e:
            logger.warning("Could not load config from %s: %s", path, e)

    config = _apply_env_overrides(config)

    return config


def _merge_config(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """
    Deep merge two configuration dictionaries.

    Args:
        base: Base configuration dictionary
        override: Override configuration dictionary

    Returns:
        Merged configuration dictionary
    """
    result = copy.deepcopy(base)

    for key, value in override.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = _merge_config(result[key], value)
        else:
            result[key] = copy.deepcopy(value)

    return result


def _apply_env_overrides(config: Dict[str, Any]) -> Dict[str, Any]:
    """
    Apply environment variable overrides to configuration.

    Supported environment variables:
    - HORNSAT_MAX_CLAUSES: clause cap of the first saturation
    - HORNSAT_MAX_STEPS: resolution step cap
    - HORNSAT_JOBS: number of statements verified in parallel

    Args:
        config: Current configuration dictionary

    Returns:
        Configuration with environment overrides applied
    """
    for env_var, (section, key) in ENV_OVERRIDES.items():
        value = os.getenv(env_var)
        if not value:
            continue
        target = config if section is None else config.setdefault(section, {})
        target[key] = value
    return config


def get_engine_settings(config: Optional[Dict[str, Any]] = None, **overrides: Any) -> EngineSettings:
    """
    Flatten the engine, solver and oracle sections into validated settings.

    Args:
        config: Full configuration dictionary; defaults when None
        **overrides: Values taking precedence over the configuration,
                     None values are ignored

    Returns:
        EngineSettings instance

    Raises:
        ValueError: If a setting has an invalid value
    """
    config = config if config is not None else copy.deepcopy(DEFAULT_CONFIG)
    flat: Dict[str, Any] = {}
    for section in ("engine", "solver", "oracle"):
        flat.update(config.get(section) or {})
    if "jobs" in config:
        flat["jobs"] = config["jobs"]
    flat.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return EngineSettings(**flat)
    except ValidationError as e:
        keys = sorted({str(err["loc"][0]) for err in e.errors() if err.get("loc")})
        raise ValueError(f"Invalid configuration value for {', '.join(keys)}: {e}") from e
