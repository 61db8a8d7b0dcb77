"""Exceptions raised by hornsat."""

from dataclasses import dataclass
from typing import List, Optional, Sequence


class HornsatError(Exception):
    """Base class for every error raised by the package."""


@dataclass(frozen=True)
class Diagnostic:
    """A located problem found while parsing or validating an input file."""

    code: str
    message: str
    line: Optional[int] = None
    column: Optional[int] = None

    def __str__(self) -> str:
        where = ""
        if self.line is not None:
            where = f"{self.line}:{self.column or 0}: "
        return f"{where}{self.code} {self.message}"


class SpecificationError(HornsatError):
    """The input specification is malformed."""

    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics: List[Diagnostic] = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))

    @classmethod
    def single(
        cls, code: str, message: str, line: Optional[int] = None, column: Optional[int] = None
    ) -> "SpecificationError":
        return cls([Diagnostic(code, message, line, column)])


class EvaluationError(HornsatError):
    """A term mentions an unknown function symbol or is not closed."""


class ResourceLimitExceeded(HornsatError):
    """Saturation hit the configured clause or step cap."""

    def __init__(self, message: str, clauses: int = 0, steps: int = 0):
        self.clauses = clauses
        self.steps = steps
        super().__init__(message)


class ModelNotFoundError(HornsatError, KeyError):
    """No bundled model has the requested id."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown model"
