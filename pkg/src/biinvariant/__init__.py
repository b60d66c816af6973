"""Bi-invariant 2-forms on Lie groups, computed exactly at the Lie algebra level."""
from .catalog import CatalogEntry, build, parse_spec
from .exact_linalg import Mat, QuotientSpace, Subspace
from .invariant_forms import AltBilinearForm, ClassificationReport, classify, invariant_two_forms
from .lie_algebra import LieAlgebra

__all__ = [
    "AltBilinearForm",
    "CatalogEntry",
    "ClassificationReport",
    "LieAlgebra",
    "Mat",
    "QuotientSpace",
    "Subspace",
    "build",
    "classify",
    "invariant_two_forms",
    "parse_spec",
]
