"""Builders for the documents the command-line tools write.

Each takes validated inputs and returns a :class:`Document`; the bundled
golden files are exactly ``serialize`` of these documents.
"""
from __future__ import annotations

import warnings

from .algebra import AlgebraPresentation, format_vector
from .double import double_quadratic_homlie
from .extension import (
    QuadraticHomLie,
    central_extension,
    center,
    derived_subalgebra,
    induced_lie_bracket,
    is_coboundary,
    kernel_equals_center,
)
from .inverse import ExtensionInput, recover_hom_structure
from .linalg import Subspace
from .product import ambient_product, associator_witness, build_A
from .textformat import Document


def span_text(sub: Subspace, labels) -> str:
    if sub.dim == 0:
        return "span{}"
    return "span{" + ", ".join(format_vector(v, labels) for v in sub.basis) + "}"


def _fresh(name: str, taken) -> str:
    while name in taken:
        name += "_"
    return name


def lie_document(q: QuadraticHomLie) -> Document:
    bracket = induced_lie_bracket(q)
    lie = AlgebraPresentation(f"{q.name}_lie", q.labels, bracket, form=q.B, form_name=q.presentation.form_name)
    header = [
        f"# center: {span_text(center(bracket), q.labels)}",
        f"# derived: {span_text(derived_subalgebra(bracket), q.labels)}",
    ]
    return Document(header=header).add_algebra(lie)


def extend_document(q: QuadraticHomLie) -> Document:
    bundle = central_extension(q)
    cob = is_coboundary(bundle.theta, bundle.lie_bracket)
    base = q.presentation
    taken = {base.name, base.twist_name, base.form_name}
    ext_name = _fresh(f"{base.name}_ext", taken)
    taken.add(ext_name)
    hom_name = _fresh(f"{base.name}_exthom", taken)
    taken.add(hom_name)
    names = {}
    for key in ("BG", "L", "k", "h", "theta"):
        names[key] = _fresh(key, taken)
        taken.add(names[key])
    header = [
        f"# theta: {'coboundary' if cob is not None else 'not a coboundary'}",
        f"# kernel of twist equals center: {'yes' if kernel_equals_center(bundle) else 'no'}",
    ]
    doc = Document(header=header)
    doc.add_algebra(base)
    doc.add_algebra(AlgebraPresentation(ext_name, bundle.labels, bundle.bracket_G, form=bundle.B_G,
                                        form_name=names["BG"]))
    doc.add_algebra(AlgebraPresentation(hom_name, bundle.labels, bundle.mu_G, twist=bundle.L,
                                        twist_name=names["L"]))
    doc.add_map(names["k"], base.name, ext_name, bundle.k)
    doc.add_map(names["h"], ext_name, base.name, bundle.h)
    doc.add_cocycle(names["theta"], base.name, ext_name, bundle.theta_on_G()[: bundle.n, : bundle.n])
    return doc


def double_document(h_alg: AlgebraPresentation) -> Document:
    q = double_quadratic_homlie(h_alg)
    return Document(header=[f"# double of {h_alg.name}"]).add_algebra(q.presentation)


def invert_document(g: AlgebraPresentation, G: AlgebraPresentation) -> Document:
    q = recover_hom_structure(ExtensionInput(g, G))
    return Document(header=[f"# recovered from {g.name} and {G.name}"]).add_algebra(q.presentation)


def product_document(q: QuadraticHomLie) -> Document:
    bundle = central_extension(q)
    xy = ambient_product(bundle)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        A = build_A(bundle, xy)
    header = [f"# warning: {w.message}" for w in caught]
    witness = associator_witness(A.product)
    if witness is None:
        header.append("# associator: identically zero")
    else:
        (i, j, k), d = witness
        lab = A.labels
        header.append(f"# associator witness: ({lab[i]} {lab[j]}) {lab[k]} - {lab[i]} ({lab[j]} {lab[k]}) "
                      f"= {format_vector(d, lab)}")
    doc = Document(header=header)
    doc.add_algebra(A.presentation(f"{q.name}_A"))
    doc.add_algebra(AlgebraPresentation(f"{q.name}_prod", bundle.labels, xy))
    return doc
