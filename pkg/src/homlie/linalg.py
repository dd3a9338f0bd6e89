"""Exact dense linear algebra over the rationals.

Matrices and vectors are numpy ``object`` arrays whose entries are
:class:`fractions.Fraction`.  Nothing here ever touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

ZERO = Fraction(0)
ONE = Fraction(1)


class DegenerateFormError(ValueError):
    pass


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(x)


def as_array(data, ndim: int | None = None) -> np.ndarray:
    """Copy ``data`` into an object array of Fractions."""
    arr = np.array(data, dtype=object)
    if ndim is not None and arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = frac(x)
    return out


def zeros(*shape: int) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = ONE
    return out


def unit_vector(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = ONE
    return v


def is_zero(a: np.ndarray) -> bool:
    return all(x == 0 for x in np.asarray(a).flat)


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and the pivot columns.

    The pivot in each column is the first nonzero entry at or below the
    current row; rows keep their given order otherwise.
    """
    a = as_array(m, ndim=2)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray) -> int:
    return len(rref(m)[1])


def solve(a: np.ndarray, b: Sequence) -> np.ndarray | None:
    """One exact solution of ``a @ x == b`` (free variables set to zero), or None."""
    a = as_array(a, ndim=2)
    b = as_array(b, ndim=1)
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape[0]} rows vs rhs of length {b.shape[0]}")
    n = a.shape[1]
    aug, pivots = rref(np.hstack([a, b.reshape(-1, 1)]))
    if n in pivots:
        return None
    x = zeros(n)
    for row, c in enumerate(pivots):
        x[c] = aug[row, n]
    return x


def inverse(a: np.ndarray) -> np.ndarray:
    a = as_array(a, ndim=2)
    n, m = a.shape
    if n != m:
        raise ValueError("only square matrices have inverses")
    aug, pivots = rref(np.hstack([a, identity(n)]))
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise np.linalg.LinAlgError("singular matrix")
    return aug[:, n:]


def sparse_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a @ b touching only nonzero entries; much faster than object-dtype matmul on sparse input."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    out = zeros(a.shape[0], b.shape[1])
    rows_b = [[(j, x) for j, x in enumerate(row) if x != 0] for row in b]
    for i, row in enumerate(a):
        acc = {}
        for k, x in enumerate(row):
            if x != 0:
                for j, y in rows_b[k]:
                    acc[j] = acc.get(j, 0) + x * y
        for j, v in acc.items():
            out[i, j] = v
    return out


class Subspace:
    """A subspace of Q^n held as the nonzero rows of an RREF matrix.

    Two subspaces are equal exactly when their RREF bases coincide.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors: Iterable = ()):
        vecs = [as_array(v, ndim=1) for v in vectors]
        for v in vecs:
            if v.shape[0] != ambient_dim:
                raise ValueError("vector length does not match the ambient dimension")
        self.ambient_dim = ambient_dim
        if vecs:
            red, piv = rref(np.vstack(vecs))
            self.basis = red[: len(piv)]
        else:
            self.basis = zeros(0, ambient_dim)

    @classmethod
    def _from_rref(cls, ambient_dim: int, basis: np.ndarray) -> "Subspace":
        sub = cls.__new__(cls)
        sub.ambient_dim = ambient_dim
        sub.basis = basis
        return sub

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls._from_rref(n, identity(n))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def vectors(self) -> list[np.ndarray]:
        return [row.copy() for row in self.basis]

    def contains(self, v) -> bool:
        return self.reduce(v) is None

    def reduce(self, v) -> np.ndarray | None:
        """Residue of ``v`` after clearing this subspace's pivots, or None if v lies inside."""
        w = as_array(v, ndim=1)
        for row in self.basis:
            c = next(i for i, x in enumerate(row) if x != 0)
            if w[c] != 0:
                w = w - w[c] * row
        return None if is_zero(w) else w

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        # x = sum s_i u_i = sum t_j w_j  <=>  (s, -t) in ker [U^T | -W^T]
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.ambient_dim)
        stacked = np.hstack([self.basis.T, -other.basis.T])
        ker = kernel(stacked)
        return Subspace(self.ambient_dim, [k[: self.dim] @ self.basis for k in ker.basis])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.all(self.basis == other.basis))
        )

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.basis.flat)))

    def __repr__(self) -> str:
        rows = ", ".join("(" + ", ".join(str(x) for x in r) + ")" for r in self.basis)
        return f"Subspace({self.ambient_dim}, [{rows}])"


def kernel(a: np.ndarray) -> Subspace:
    a = as_array(a, ndim=2)
    cols = a.shape[1]
    red, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    vectors = []
    for f in free:
        v = zeros(cols)
        v[f] = ONE
        for row, c in enumerate(pivots):
            v[c] = -red[row, f]
        vectors.append(v)
    return Subspace(cols, vectors)


def image(a: np.ndarray) -> Subspace:
    a = as_array(a, ndim=2)
    return Subspace(a.shape[0], list(a.T))


def complement(sub: Subspace) -> Subspace:
    """Greedy complement: standard basis vectors e_0, e_1, ... independent of ``sub``."""
    n = sub.ambient_dim
    current = sub
    chosen = []
    for i in range(n):
        if current.dim == n:
            break
        e = unit_vector(n, i)
        if not current.contains(e):
            chosen.append(e)
            current = current + Subspace(n, [e])
    return Subspace(n, chosen)


def form_flat_sharp(b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """The musical isomorphisms of a non-degenerate form: (flat, sharp) with flat @ sharp = Id."""
    b = as_array(b, ndim=2)
    try:
        sharp = inverse(b)
    except np.linalg.LinAlgError:
        raise DegenerateFormError("degenerate form") from None
    return b, sharp
