"""Exact arithmetic: finite fields, polynomials, polynomial matrices."""

from .fields import GF, Embedding, FieldError, canonical_quadratic, embedding, extension_field, fq_make
from .matrix import hnf_contains, hnf_reduce, matrix_hnf, weak_popov
from .poly import NEG_INF, PolyError, PolyRing, ResidueField, poly_factor, poly_ring

__all__ = [
    "GF", "Embedding", "FieldError", "canonical_quadratic", "embedding", "extension_field", "fq_make",
    "hnf_contains", "hnf_reduce", "matrix_hnf", "weak_popov",
    "NEG_INF", "PolyError", "PolyRing", "ResidueField", "poly_factor", "poly_ring",
]
