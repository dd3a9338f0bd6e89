"""Structure-constant representation of products, maps and forms on a labeled basis."""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

import numpy as np

from .linalg import ZERO, as_array, frac, identity, is_zero, zeros

LABEL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Product:
    """A bilinear product on Q^n given by structure constants.

    ``c[i, j, k]`` is the coefficient of ``e_k`` in ``p(e_i, e_j)``.  With
    ``skew=True`` the constructor insists on ``c[i, j] == -c[j, i]``.
    """

    def __init__(self, c, skew: bool = True):
        c = as_array(c, ndim=3)
        n = c.shape[0]
        if c.shape != (n, n, n):
            raise ValueError(f"structure constants must have shape (n, n, n), got {c.shape}")
        if skew:
            for i in range(n):
                for j in range(i, n):
                    if not np.all(c[i, j] == -c[j, i]):
                        raise ValueError(f"product tagged skew but c[{i},{j}] != -c[{j},{i}]")
        c.flags.writeable = False
        self.c = c
        self.skew = skew
        # sparse rows: (i, j) -> [(k, coeff), ...]
        self._rows = {}
        for (i, j, k), x in np.ndenumerate(c):
            if x != 0:
                self._rows.setdefault((i, j), []).append((k, x))

    @classmethod
    def zero(cls, n: int, skew: bool = True) -> "Product":
        return cls(zeros(n, n, n), skew=skew)

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    def __call__(self, x, y) -> np.ndarray:
        return eval_product(self, x, y)

    def basis_product(self, i: int, j: int) -> np.ndarray:
        return self.c[i, j].copy()

    def mapped(self, m: np.ndarray, i: int, j: int) -> np.ndarray:
        """m(p(e_i, e_j)) using only the nonzero structure constants."""
        out = zeros(m.shape[0])
        for k, x in self._rows.get((i, j), ()):
            out = out + x * m[:, k]
        return out

    def left(self, x) -> np.ndarray:
        return left_mult_operator(self, x)

    def right(self, x) -> np.ndarray:
        return right_mult_operator(self, x)

    def is_abelian(self) -> bool:
        return not self._rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, Product):
            return NotImplemented
        return self.skew == other.skew and self.c.shape == other.c.shape and bool(np.all(self.c == other.c))

    def __repr__(self) -> str:
        return f"Product(dim={self.dim}, skew={self.skew}, nonzero={len(self._rows)})"


def _check_len(v, n: int) -> np.ndarray:
    v = np.asarray(v, dtype=object)
    if v.shape != (n,):
        raise ValueError(f"expected a vector of length {n}, got shape {v.shape}")
    return v


def eval_product(p: Product, x, y) -> np.ndarray:
    n = p.dim
    x = _check_len(x, n)
    y = _check_len(y, n)
    out = zeros(n)
    xs = [(i, a) for i, a in enumerate(x) if a != 0]
    ys = [(j, b) for j, b in enumerate(y) if b != 0]
    rows = p._rows
    for i, a in xs:
        for j, b in ys:
            for k, c in rows.get((i, j), ()):
                out[k] += a * b * c
    return out


def left_mult_operator(p: Product, x) -> np.ndarray:
    """Matrix of y -> p(x, y)."""
    n = p.dim
    x = _check_len(x, n)
    m = zeros(n, n)
    for (i, j), entries in p._rows.items():
        a = x[i]
        if a != 0:
            for k, c in entries:
                m[k, j] += a * c
    return m


def right_mult_operator(p: Product, x) -> np.ndarray:
    """Matrix of y -> p(y, x)."""
    n = p.dim
    x = _check_len(x, n)
    m = zeros(n, n)
    for (i, j), entries in p._rows.items():
        b = x[j]
        if b != 0:
            for k, c in entries:
                m[k, i] += b * c
    return m


def eval_map(m: np.ndarray, v) -> np.ndarray:
    m = np.asarray(m, dtype=object)
    return m @ _check_len(v, m.shape[1])


def eval_form(b: np.ndarray, x, y):
    b = np.asarray(b, dtype=object)
    n = b.shape[0]
    return _check_len(x, n) @ b @ _check_len(y, n)


def dual_map(s: np.ndarray) -> np.ndarray:
    """Matrix of S*: phi -> phi o S in dual-basis coordinates (the transpose)."""
    return np.asarray(s, dtype=object).T.copy()


def postcompose(f: np.ndarray, p: Product, skew: bool | None = None) -> Product:
    """Product (x, y) -> f(p(x, y)) for a square matrix f."""
    n = p.dim
    c = zeros(n, n, n)
    for (i, j), entries in p._rows.items():
        for k, x in entries:
            c[i, j] += x * f[:, k]
    return Product(c, skew=p.skew if skew is None else skew)


def product_from_basis(n: int, fn, skew: bool = True) -> Product:
    """Product whose value on (e_i, e_j) is the vector ``fn(i, j)``."""
    c = zeros(n, n, n)
    for i in range(n):
        for j in range(n):
            c[i, j] = fn(i, j)
    return Product(c, skew=skew)


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    """Labeled basis, product, and optional twist map and bilinear form.

    ``twist_name``/``form_name`` are the block names used when the
    presentation is written out; ``dual_labels`` names a dual basis.
    """

    name: str
    labels: tuple[str, ...]
    product: Product
    twist: np.ndarray | None = None
    form: np.ndarray | None = None
    twist_name: str = "T"
    form_name: str = "B"
    dual_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"algebra {self.name}: basis labels are not distinct")
        for lab in labels:
            if not LABEL_RE.match(lab):
                raise ValueError(f"algebra {self.name}: invalid basis label {lab!r}")
        n = len(labels)
        if self.product.dim != n:
            raise ValueError(f"algebra {self.name}: product has dim {self.product.dim}, basis has {n} labels")
        for what in ("twist", "form"):
            m = getattr(self, what)
            if m is not None:
                m = as_array(m, ndim=2)
                if m.shape != (n, n):
                    raise ValueError(f"algebra {self.name}: {what} must be {n}x{n}, got {m.shape}")
                object.__setattr__(self, what, m)
        if self.dual_labels is not None:
            dl = tuple(self.dual_labels)
            if len(dl) != n:
                raise ValueError(f"algebra {self.name}: need {n} dual labels, got {len(dl)}")
            object.__setattr__(self, "dual_labels", dl)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown label {label!r} in algebra {self.name}") from None

    def vector(self, terms: Mapping[str, object] | str) -> np.ndarray:
        """Coordinate vector from ``{"a1": 1, "b2": -1}`` or a single label."""
        if isinstance(terms, str):
            terms = {terms: 1}
        v = zeros(self.dim)
        for lab, c in terms.items():
            v[self.index(lab)] += frac(c)
        return v

    def basis_vector(self, label: str) -> np.ndarray:
        return self.vector(label)

    def with_(self, **changes) -> "AlgebraPresentation":
        return replace(self, **changes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraPresentation):
            return NotImplemented

        def same(a, b):
            if a is None or b is None:
                return a is b
            return a.shape == b.shape and bool(np.all(a == b))

        return (
            self.labels == other.labels
            and self.product == other.product
            and same(self.twist, other.twist)
            and same(self.form, other.form)
        )


def direct_sum(a1: AlgebraPresentation, a2: AlgebraPresentation, name: str | None = None) -> AlgebraPresentation:
    """Block direct sum; cross products, map blocks and form blocks are zero."""
    clash = set(a1.labels) & set(a2.labels)
    if clash:
        raise ValueError(f"label collision in direct sum: {sorted(clash)}")
    n1, n2 = a1.dim, a2.dim
    n = n1 + n2
    c = zeros(n, n, n)
    c[:n1, :n1, :n1] = a1.product.c
    c[n1:, n1:, n1:] = a2.product.c

    def block(m1, m2, fill_identity):
        if m1 is None and m2 is None:
            return None
        out = zeros(n, n)
        out[:n1, :n1] = m1 if m1 is not None else (identity(n1) if fill_identity else zeros(n1, n1))
        out[n1:, n1:] = m2 if m2 is not None else (identity(n2) if fill_identity else zeros(n2, n2))
        return out

    return AlgebraPresentation(
        name=name or f"{a1.name}_{a2.name}",
        labels=a1.labels + a2.labels,
        product=Product(c, skew=a1.product.skew and a2.product.skew),
        twist=block(a1.twist, a2.twist, False),
        form=block(a1.form, a2.form, False),
    )


def format_vector(v, labels: Sequence[str]) -> str:
    """``-1 y2 + 1/2 v3`` style rendering; ``0`` for the zero vector."""
    parts = [f"{x} {labels[i]}" for i, x in enumerate(v) if x != 0]
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def vector_terms(v, labels: Sequence[str]) -> dict[str, object]:
    return {labels[i]: x for i, x in enumerate(v) if x != 0}


__all__ = [
    "AlgebraPresentation",
    "Product",
    "direct_sum",
    "dual_map",
    "eval_form",
    "eval_map",
    "eval_product",
    "format_vector",
    "is_zero",
    "left_mult_operator",
    "postcompose",
    "product_from_basis",
    "right_mult_operator",
    "vector_terms",
    "ZERO",
]
