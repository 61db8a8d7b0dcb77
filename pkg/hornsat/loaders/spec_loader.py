"""Loading specifications from files or bundled model ids."""

from pathlib import Path
from typing import Union

from ..language.ast import Specification
from ..language.parser import parse_file
from ..models.catalog import MODEL_IDS, load_model


class SpecificationLoader:
    """Loads a `.hsl` file, or a bundled model when given its id."""

    SUFFIXES = (".hsl",)

    @classmethod
    def resolve(cls, source: Union[str, Path]) -> Union[str, Path]:
        """The bundled model id `source` names, or `source` as a path."""
        text = str(source)
        if text in MODEL_IDS and not Path(text).exists():
            return text
        return Path(source)

    @classmethod
    def load(cls, source: Union[str, Path], validate: bool = True) -> Specification:
        """
        Load and parse a specification.

        Args:
            source: Path to a `.hsl` file or a bundled model id
            validate: Reject specifications with validation diagnostics

        Returns:
            The parsed specification

        Raises:
            FileNotFoundError: If the path does not exist
            ValueError: If the file format is not supported
            SpecificationError: If the file does not parse or validate
        """
        resolved = cls.resolve(source)
        if isinstance(resolved, str):
            return load_model(resolved)

        if not resolved.exists():
            raise FileNotFoundError(f"File not found: {source}")

        suffix = resolved.suffix.lower()
        if suffix not in cls.SUFFIXES:
            raise ValueError(
                f"Unsupported file format: {suffix or '(none)'}. "
                f"Supported formats: {', '.join(cls.SUFFIXES)} or a bundled model id"
            )

        return parse_file(resolved, validate=validate)
