"""Representation theory of the Nappi-Witten algebra h4 and its affinisation.

Exact arithmetic throughout: PBW normal ordering, Verma and relaxed modules,
singular vectors, Shapovalov forms and characters as weight tables.
"""

from .affmodules import InducedModule, WeightTable, relaxed, relaxed_reducible, vacuum, verma, weight_table
from .characters import ClosedFormChar, QSeries, eta_inv4, expand, twist_table
from .h4finite import AutomorphismSpec, Label, build_module
from .shapovalov import ShapovalovForm, irreducible_dims, shap_matrix, string_function, triangularity_check
from .singular import closed_form, solve_singular

__version__ = "0.1.0"

__all__ = [
    "AutomorphismSpec",
    "ClosedFormChar",
    "InducedModule",
    "Label",
    "QSeries",
    "ShapovalovForm",
    "WeightTable",
    "build_module",
    "closed_form",
    "eta_inv4",
    "expand",
    "irreducible_dims",
    "relaxed",
    "relaxed_reducible",
    "shap_matrix",
    "solve_singular",
    "string_function",
    "triangularity_check",
    "twist_table",
    "vacuum",
    "verma",
    "weight_table",
]
