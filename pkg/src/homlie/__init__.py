"""Exact computations with quadratic Hom-Lie algebras and their central extensions."""
from .algebra import AlgebraPresentation, Product
from .corpus import load_example
from .double import double_quadratic_homlie
from .extension import CentralExtensionBundle, QuadraticHomLie, central_extension, induced_lie_bracket
from .inverse import ExtensionInput, recover_hom_structure
from .linalg import Subspace
from .product import UnitalAlgebra, ambient_product, build_A, ideal_closure, scan_proper_ideals
from .textformat import Document, parse, serialize

__all__ = [
    "AlgebraPresentation",
    "CentralExtensionBundle",
    "Document",
    "ExtensionInput",
    "Product",
    "QuadraticHomLie",
    "Subspace",
    "UnitalAlgebra",
    "ambient_product",
    "build_A",
    "central_extension",
    "double_quadratic_homlie",
    "ideal_closure",
    "induced_lie_bracket",
    "load_example",
    "parse",
    "recover_hom_structure",
    "scan_proper_ideals",
    "serialize",
]
