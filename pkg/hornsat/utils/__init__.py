"""Utils package."""

from .config import EngineSettings, get_engine_settings, load_config
from .environment import setup_environment

__all__ = ["EngineSettings", "get_engine_settings", "load_config", "setup_environment"]
