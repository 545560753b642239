"""Finite-field checks for n-angulated, n-exact, n-abelian and n-exangulated structures, and their transport along equivalences."""
from __future__ import annotations

from .category import AddFunctor, AddMorphism, BaseCategory, EquivalenceWitness, NatTransform, Universe
from .report import FAIL, INCONCLUSIVE, PASS, InputError, Report

__version__ = "0.1.0"

__all__ = [
    "AddFunctor",
    "AddMorphism",
    "BaseCategory",
    "EquivalenceWitness",
    "NatTransform",
    "Universe",
    "Report",
    "InputError",
    "PASS",
    "FAIL",
    "INCONCLUSIVE",
    "__version__",
]
