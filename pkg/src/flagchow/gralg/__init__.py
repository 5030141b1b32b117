"""Graded algebras: presentations, Groebner bases over F_p, graded groups."""
from .groebner import GroebnerBasis, groebner_fp
from .presentation import (AlgebraPresentation, RegularSequenceReport, graded_groups,
                           hilbert_series, load_presentation, presentation_from_json,
                           regular_sequence_check)

__all__ = [
    "AlgebraPresentation", "GroebnerBasis", "RegularSequenceReport", "graded_groups",
    "groebner_fp", "hilbert_series", "load_presentation", "presentation_from_json",
    "regular_sequence_check",
]
