"""Loaders package."""

from .spec_loader import SpecificationLoader

__all__ = ["SpecificationLoader"]
