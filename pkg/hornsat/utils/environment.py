"""Process environment: .env loading and log verbosity."""

import logging
import os

LOG_LEVELS = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
}


def setup_environment() -> None:
    """Load variables from a .env file if present and configure the `hornsat` logger."""
    try:
        from dotenv import load_dotenv

        load_dotenv()
    except ImportError:
        pass

    level = LOG_LEVELS.get(os.getenv("HORNSAT_LOG", "warning").lower(), logging.WARNING)
    root = logging.getLogger("hornsat")
    root.setLevel(level)
    if not root.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        root.addHandler(handler)
