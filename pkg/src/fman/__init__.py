"""Exact computations for F_man-algebras, their canonical connection and holonomy."""
from .algebra import AlgebraStructure, is_fman, is_poisson, leibnizator
from .connection import curvature_commutator, curvature_split, torsion
from .dpois import dpois_fiber
from .holonomy import holonomy_algebra, poisson_holonomy
from .inputs import InputError, InputSpec, load_example, parse_input
from .report import emit_report, run_analysis

__all__ = [
    "AlgebraStructure",
    "InputError",
    "InputSpec",
    "curvature_commutator",
    "curvature_split",
    "dpois_fiber",
    "emit_report",
    "holonomy_algebra",
    "is_fman",
    "is_poisson",
    "leibnizator",
    "load_example",
    "parse_input",
    "poisson_holonomy",
    "run_analysis",
    "torsion",
]
