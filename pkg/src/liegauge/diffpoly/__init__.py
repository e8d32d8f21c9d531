"""Exact differential polynomial arithmetic, rankings and reduction."""

from .core import (
    CLASSES,
    NEG_INF,
    Derivative,
    DiffIndet,
    DiffPoly,
    exact_divide,
)
from .frac import DiffFrac
from .grammar import (
    ParseError,
    frac_to_text,
    frac_to_tree,
    parse_frac,
    parse_poly,
    poly_to_text,
    poly_to_tree,
    tree_to_frac,
    tree_to_poly,
)
from .ranking import Ranking
from .reduction import (
    PseudoRemainder,
    SimpleReport,
    SolvedEquation,
    TriangularSystem,
    leader_reducible,
    initial,
    is_simple,
    leader,
    order_in,
    pseudo_reduce,
    pseudo_reduce_list,
    separant,
    triangular_reduce,
)

__all__ = [
    "CLASSES",
    "NEG_INF",
    "Derivative",
    "DiffIndet",
    "DiffPoly",
    "DiffFrac",
    "ParseError",
    "PseudoRemainder",
    "Ranking",
    "SimpleReport",
    "SolvedEquation",
    "TriangularSystem",
    "leader_reducible",
    "exact_divide",
    "frac_to_text",
    "frac_to_tree",
    "initial",
    "is_simple",
    "leader",
    "order_in",
    "parse_frac",
    "parse_poly",
    "poly_to_text",
    "poly_to_tree",
    "pseudo_reduce",
    "pseudo_reduce_list",
    "separant",
    "triangular_reduce",
    "tree_to_frac",
    "tree_to_poly",
]
