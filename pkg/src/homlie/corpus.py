"""Bundled example files.

``nu6``, ``nilpotent6`` and ``extension9`` are hand-written inputs.  The
rest are goldens: the exact output of the corresponding command, which
``regenerate`` reproduces byte for byte.
"""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .textformat import Document, parse, serialize

FILES = {
    "nu6": "nu6.alg",
    "nilpotent6": "nilpotent6.alg",
    "extension9": "extension9.alg",
    "double12": "double12.alg",
    "nilpotent6-hom": "nilpotent6-hom.alg",
    "algebraA": "algebraA.alg",
}

# golden name -> (command, input example names)
GOLDENS = {
    "double12": ("double", ("nu6",)),
    "nilpotent6-hom": ("invert", ("nilpotent6", "extension9")),
    "algebraA": ("product", ("nilpotent6-hom",)),
}


@dataclass(frozen=True)
class NamedExample:
    name: str
    filename: str
    text: str
    document: Document


def example_text(name: str) -> str:
    if name not in FILES:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(sorted(FILES))}")
    return resources.files("homlie").joinpath("data").joinpath(FILES[name]).read_text(encoding="utf-8")


def load_example(name: str) -> NamedExample:
    text = example_text(name)
    return NamedExample(name, FILES[name], text, parse(text))


def regenerate(name: str) -> str:
    """Recompute a golden file from its inputs."""
    from .documents import double_document, invert_document, product_document
    from .extension import QuadraticHomLie

    command, inputs = GOLDENS[name]
    docs = [load_example(i).document for i in inputs]
    if command == "double":
        return serialize(double_document(docs[0].algebra()))
    if command == "invert":
        return serialize(invert_document(docs[0].algebra(), docs[1].algebra()))
    return serialize(product_document(QuadraticHomLie(docs[0].algebra())))
