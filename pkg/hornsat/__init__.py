"""hornsat: saturation-based protocol verification with user-defined predicates."""

__version__ = "0.1.0"
