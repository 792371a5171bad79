"""Exact computations with Cohen algebras, Cohen groups and their natural transformations."""

from .cohen_algebra import AlgebraElement, Monomial, basis, shuffle_expand
from .cohen_group import GroupElement, GroupWord, lift_H, rep
from .errors import CohenAlgError
from .grammar import parse_element, parse_group_element, parse_word
from .nat_transform import FreeModule, TensorElement, theta_eval
from .ring_core import Z, RingSpec, Scalar

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "CohenAlgError",
    "FreeModule",
    "GroupElement",
    "GroupWord",
    "Monomial",
    "RingSpec",
    "Scalar",
    "TensorElement",
    "Z",
    "basis",
    "lift_H",
    "parse_element",
    "parse_group_element",
    "parse_word",
    "rep",
    "shuffle_expand",
    "theta_eval",
]
