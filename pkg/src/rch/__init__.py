"""Exact color homology of ribbon graphs with perfect matchings.

The package computes state sums (n-color, Penrose and total face color
polynomials), bigraded and filtered homology, spectral sequence pages and the
fate of the psi class, all with exact rational or quadratic-field arithmetic.
"""

from .catalog import get as get_example
from .dsl import dump, load, parse
from .homology import (
    bigraded_homology,
    filtered_homology,
    harmonic_state_dims,
    psi_survival,
    spectral_invariant,
    spectral_page,
)
from .invariants import (
    n_color_number,
    n_color_polynomial,
    penrose_polynomial,
    total_face_color_at,
    total_face_color_interpolated,
    tsharp,
    two_variable_penrose,
)
from .ribbon import PMDiagram, RibbonDiagram, blowup, surface_stats, validate, vertex_flip

__version__ = "0.1.0"

__all__ = [
    "PMDiagram",
    "RibbonDiagram",
    "bigraded_homology",
    "blowup",
    "dump",
    "filtered_homology",
    "get_example",
    "harmonic_state_dims",
    "load",
    "n_color_number",
    "n_color_polynomial",
    "parse",
    "penrose_polynomial",
    "psi_survival",
    "spectral_invariant",
    "spectral_page",
    "surface_stats",
    "total_face_color_at",
    "total_face_color_interpolated",
    "tsharp",
    "two_variable_penrose",
    "validate",
    "vertex_flip",
]
