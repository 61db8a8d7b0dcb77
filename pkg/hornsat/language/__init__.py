"""Input language: grammar, parser, validator and printer."""

from .ast import Specification, Statement, StatementKind
from .parser import parse_file, parse_specification
from .printer import format_specification
from .validate import validate_specification

__all__ = [
    "Specification",
    "Statement",
    "StatementKind",
    "format_specification",
    "parse_file",
    "parse_specification",
    "validate_specification",
]
