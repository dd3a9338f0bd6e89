"""Decidable checks for the identities a (quadratic) Hom-Lie algebra must satisfy.

Every check scans basis tuples in lexicographic order and stops at the
first failure, so a failing report always names the same witness.
Multilinearity makes the basis scan equivalent to the identity on all
vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product as cartesian
from typing import Sequence

import numpy as np

from .algebra import Product, format_vector
from .linalg import identity, is_zero, kernel, sparse_matmul, unit_vector


class AxiomError(ValueError):
    """Raised when a structure is built from data that fails a required identity."""

    def __init__(self, report: "CheckReport", context: str = ""):
        self.report = report
        msg = report.describe()
        super().__init__(f"{context}: {msg}" if context else msg)


class ConstructionError(RuntimeError):
    """A construction produced data violating an identity it is guaranteed to satisfy."""

    def __init__(self, report: "CheckReport", context: str = ""):
        self.report = report
        msg = report.describe()
        super().__init__(f"{context}: {msg}" if context else msg)


@dataclass(frozen=True)
class CheckReport:
    name: str
    holds: bool
    witness: tuple | None = None
    defect: object = None

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a report fails exactly when it carries a witness")

    def __bool__(self) -> bool:
        return self.holds

    def describe(self, labels: Sequence[str] | None = None) -> str:
        if self.holds:
            return f"{self.name}: holds"
        names = [labels[i] if labels is not None and isinstance(i, int) else str(i) for i in self.witness]
        if isinstance(self.defect, np.ndarray) and self.defect.ndim == 1:
            shown = format_vector(self.defect, labels) if labels is not None else str(list(self.defect))
        else:
            shown = str(self.defect)
        return f"{self.name}: FAILS witness ({','.join(names)}) defect {shown}"

    def raise_if_failed(self, context: str = "", error=AxiomError) -> "CheckReport":
        if not self.holds:
            raise error(self, context)
        return self


def require(reports, context: str = "", error=AxiomError) -> None:
    for rep in reports:
        rep.raise_if_failed(context, error)


def subspace_report(name: str, got, expected) -> "CheckReport":
    """Compare two Subspaces; a mismatch is witnessed by a vector of one missing from the other."""
    for v in got.basis:
        if not expected.contains(v):
            return CheckReport(name, False, ("extra",), v.copy())
    for v in expected.basis:
        if not got.contains(v):
            return CheckReport(name, False, ("missing",), v.copy())
    return CheckReport(name, True)


def _ok(name: str) -> CheckReport:
    return CheckReport(name, True)


def _basis(n: int) -> list[np.ndarray]:
    return [unit_vector(n, i) for i in range(n)]


def is_skew(p: Product) -> CheckReport:
    n = p.dim
    for i in range(n):
        for j in range(i, n):
            d = p.c[i, j] + p.c[j, i]
            if not is_zero(d):
                return CheckReport("skew", False, (i, j), d)
    return _ok("skew")


def _cyclic(p: Product, t: np.ndarray, i: int, j: int, k: int) -> np.ndarray:
    c = p.c
    return p(t[:, i], c[j, k]) + p(t[:, j], c[k, i]) + p(t[:, k], c[i, j])


def is_hom_jacobi(p: Product, t: np.ndarray, name: str = "hom-jacobi") -> CheckReport:
    """Twisted Jacobi identity p(Tx,p(y,z)) + cyclic = 0 on all triples i<j<k.

    For a skew product the cyclic sum is alternating, so increasing
    triples suffice.
    """
    if not p.skew:
        raise ValueError("the twisted Jacobi identity is checked for skew products only")
    n = p.dim
    if t.shape != (n, n):
        raise ValueError(f"twist map must be {n}x{n}")
    for i, j, k in combinations(range(n), 3):
        d = _cyclic(p, t, i, j, k)
        if not is_zero(d):
            return CheckReport(name, False, (i, j, k), d)
    return _ok(name)


def is_jacobi(p: Product) -> CheckReport:
    return is_hom_jacobi(p, identity(p.dim), name="jacobi")


def is_equivariant(p: Product, t: np.ndarray, name: str = "equivariance") -> CheckReport:
    """T(p(x, y)) == p(T x, y) on all ordered basis pairs."""
    n = p.dim
    e = _basis(n)
    for i, j in cartesian(range(n), repeat=2):
        d = p.mapped(t, i, j) - p(t[:, i], e[j])
        if not is_zero(d):
            return CheckReport(name, False, (i, j), d)
    return _ok(name)


def is_symmetric_form(b: np.ndarray) -> CheckReport:
    n = b.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            if b[i, j] != b[j, i]:
                return CheckReport("symmetric", False, (i, j), b[i, j] - b[j, i])
    return _ok("symmetric")


def is_nondegenerate(b: np.ndarray) -> CheckReport:
    ker = kernel(b)
    if ker.dim:
        v = ker.basis[0]
        first = next(i for i, x in enumerate(v) if x != 0)
        return CheckReport("non-degenerate", False, (first,), v)
    return _ok("non-degenerate")


def is_invariant(b: np.ndarray, p: Product, name: str = "invariance") -> CheckReport:
    """B(p(x, y), z) == B(x, p(y, z)) on all basis triples."""
    n = p.dim
    bt = b.T
    # lhs[i, j] = B(p(e_i, e_j), .) and rhs[j, k] = B(., p(e_j, e_k))
    lhs = {(i, j): p.mapped(bt, i, j) for i, j in cartesian(range(n), repeat=2)}
    rhs = {(j, k): p.mapped(b, j, k) for j, k in cartesian(range(n), repeat=2)}
    for i, j, k in cartesian(range(n), repeat=3):
        d = lhs[i, j][k] - rhs[j, k][i]
        if d != 0:
            return CheckReport(name, False, (i, j, k), d)
    return _ok(name)


def is_invariant_metric(b: np.ndarray, p: Product) -> CheckReport:
    """Symmetric, non-degenerate and p-invariant; reports the first failing sub-check."""
    for sub in (is_symmetric_form(b), is_nondegenerate(b), is_invariant(b, p)):
        if not sub:
            return CheckReport(f"invariant-metric/{sub.name}", False, sub.witness, sub.defect)
    return _ok("invariant-metric")


def _adjoint_defect(t, b, sign, name) -> CheckReport:
    # B(T e_i, e_j) - sign * B(e_i, T e_j)
    m = sparse_matmul(t.T, b) - sign * sparse_matmul(b, t)
    n = m.shape[0]
    for i, j in cartesian(range(n), repeat=2):
        if m[i, j] != 0:
            return CheckReport(name, False, (i, j), m[i, j])
    return _ok(name)


def is_self_adjoint(t: np.ndarray, b: np.ndarray) -> CheckReport:
    return _adjoint_defect(t, b, 1, "self-adjoint")


def is_anti_self_adjoint(d: np.ndarray, b: np.ndarray) -> CheckReport:
    return _adjoint_defect(d, b, -1, "anti-self-adjoint")


def is_derivation(d: np.ndarray, p: Product) -> CheckReport:
    """D(p(x, y)) == p(D x, y) + p(x, D y) on basis pairs."""
    n = p.dim
    e = _basis(n)
    for i, j in cartesian(range(n), repeat=2):
        defect = p.mapped(d, i, j) - p(d[:, i], e[j]) - p(e[i], d[:, j])
        if not is_zero(defect):
            return CheckReport("derivation", False, (i, j), defect)
    return _ok("derivation")


def is_hom_morphism(psi: np.ndarray, src: tuple[Product, np.ndarray], dst: tuple[Product, np.ndarray]) -> CheckReport:
    """psi(p1(x, y)) == p2(psi x, psi y) and psi T1 == T2 psi."""
    p1, t1 = src
    p2, t2 = dst
    n = p1.dim
    if psi.shape != (p2.dim, n):
        raise ValueError(f"morphism must be {p2.dim}x{n}, got {psi.shape}")
    for i, j in cartesian(range(n), repeat=2):
        d = p1.mapped(psi, i, j) - p2(psi[:, i], psi[:, j])
        if not is_zero(d):
            return CheckReport("hom-morphism/product", False, (i, j), d)
    m = psi @ t1 - t2 @ psi
    for i in range(n):
        if not is_zero(m[:, i]):
            return CheckReport("hom-morphism/twist", False, (i,), m[:, i].copy())
    return _ok("hom-morphism")


def hom_lie_battery(p: Product, t: np.ndarray, b: np.ndarray | None = None) -> list[CheckReport]:
    """The checks that make (p, T[, B]) a (quadratic) Hom-Lie algebra with equivariant twist."""
    reports = [is_skew(p)]
    if not reports[0]:
        return reports
    reports += [is_hom_jacobi(p, t), is_equivariant(p, t)]
    if b is not None:
        reports += [is_invariant_metric(b, p), is_self_adjoint(t, b)]
    return reports
