"""Recover a quadratic Hom-Lie algebra from a quadratic central extension.

Input: a quadratic Lie algebra (g, [.,.], B) and a central extension
G = g + V carrying an invariant metric B_G for which V is isotropic.
Output: (g, mu, T, B) with T o mu = [.,.] and dim Ker T = dim V.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

import numpy as np

from .algebra import AlgebraPresentation, Product, product_from_basis
from .checks import (
    CheckReport,
    ConstructionError,
    is_anti_self_adjoint,
    is_equivariant,
    is_invariant_metric,
    is_jacobi,
    is_self_adjoint,
    require,
)
from .extension import QuadraticHomLie
from .linalg import identity, inverse, is_zero, kernel, sparse_matmul, unit_vector, zeros


class HypothesisError(ValueError):
    """An extension input violates one of the hypotheses of the recovery."""

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        super().__init__(f"hypothesis violated: {hypothesis}" + (f" ({detail})" if detail else ""))


def _permuted(G: AlgebraPresentation, order: list[int]) -> AlgebraPresentation:
    p = np.array(order)
    c = G.product.c[np.ix_(p, p, p)]
    form = G.form[np.ix_(p, p)] if G.form is not None else None
    return AlgebraPresentation(G.name, tuple(G.labels[i] for i in order), Product(c, skew=G.product.skew), form=form,
                               form_name=G.form_name)


@dataclass(frozen=True, eq=False)
class ExtensionInput:
    """A quadratic Lie algebra g and a central extension G, with G's basis reordered so g comes first."""

    g: AlgebraPresentation
    G: AlgebraPresentation

    def __post_init__(self):
        g, G = self.g, self.G
        if g.form is None:
            raise HypothesisError("g carries an invariant metric", f"algebra {g.name} has no form")
        if G.form is None:
            raise HypothesisError("G carries an invariant metric", f"algebra {G.name} has no form")
        missing = [lab for lab in g.labels if lab not in G.labels]
        if missing:
            raise HypothesisError("g embeds in G as a coordinate block", f"labels {missing} not in {G.name}")
        first = [G.labels.index(lab) for lab in g.labels]
        rest = [i for i in range(G.dim) if i not in first]
        if first + rest != list(range(G.dim)):
            object.__setattr__(self, "G", _permuted(G, first + rest))
        self._validate()

    @property
    def n(self) -> int:
        return self.g.dim

    @property
    def r(self) -> int:
        return self.G.dim - self.g.dim

    def _validate(self):
        g, G, n = self.g, self.G, self.n
        checks = [
            ("bracket of g satisfies Jacobi", is_jacobi(g.product)),
            ("B is an invariant metric on g", is_invariant_metric(g.form, g.product)),
            ("bracket of G satisfies Jacobi", is_jacobi(G.product)),
            ("B_G is an invariant metric on G", is_invariant_metric(G.form, G.product)),
        ]
        for hyp, rep in checks:
            if not rep:
                raise HypothesisError(hyp, rep.describe())
        if self.r == 0:
            raise HypothesisError("V is nonzero", "G and g have the same dimension")
        if not is_zero(G.form[n:, n:]):
            raise HypothesisError("V is isotropic for B_G")
        for v in range(n, G.dim):
            if not is_zero(G.product.c[v]):
                raise HypothesisError("V is central in G", f"{G.labels[v]} has a nonzero bracket")
        for i, j in cartesian(range(n), repeat=2):
            if not is_zero(G.product.c[i, j, :n] - g.product.c[i, j]):
                raise HypothesisError("projection of [.,.]_G to g is the bracket of g",
                                      f"mismatch at ({g.labels[i]},{g.labels[j]})")


def transfer_maps(inp: ExtensionInput) -> tuple[np.ndarray, np.ndarray]:
    """h = B# o iota* o B_G-flat (n x N) and k = B_G# o pi* o B-flat (N x n)."""
    n = inp.n
    B, BG = inp.g.form, inp.G.form
    h = inverse(B) @ BG[:n, :]
    k = inverse(BG)[:, :n] @ B
    return h, k


def rho_operator(inp: ExtensionInput, x, h: np.ndarray | None = None) -> np.ndarray:
    """Matrix on g of y -> h([x, y]_G) for x in G."""
    if h is None:
        h, _ = transfer_maps(inp)
    n = inp.n
    return h @ inp.G.product.left(np.asarray(x, dtype=object))[:, :n]


def _matrix_report(name: str, m: np.ndarray, witness) -> CheckReport:
    return CheckReport(name, True) if is_zero(m) else CheckReport(name, False, witness, m)


def gsv_battery(inp: ExtensionInput, rhos, T: np.ndarray, mu: Product) -> list[CheckReport]:
    n = inp.n
    bracket, B = inp.g.product, inp.g.form
    reports = []
    for i in range(n):
        ad = bracket.left(unit_vector(n, i))
        reports.append(_matrix_report("T rho(x) = ad(x)", sparse_matmul(T, rhos[i]) - ad, (i,)))
        reports.append(_matrix_report("rho(x) T = ad(x)", sparse_matmul(rhos[i], T) - ad, (i,)))
        reports.append(is_anti_self_adjoint(rhos[i], B))
    rho_t = [sparse_matmul(r, T) for r in rhos]
    m = {(i, j): sparse_matmul(rho_t[i], rhos[j]) for i, j in cartesian(range(n), repeat=2)}
    for i, j in cartesian(range(n), repeat=2):
        lhs = sum((x * rhos[k] for k, x in enumerate(bracket.c[i, j]) if x != 0), zeros(n, n))
        rhs = m[i, j] - m[j, i]
        reports.append(_matrix_report("rho([x,y]) = rho(x)T rho(y) - rho(y)T rho(x)", lhs - rhs, (i, j)))
    for i, j in cartesian(range(n), repeat=2):
        reports.append(_matrix_report("T mu(x,y) = [x,y]", mu.mapped(T, i, j) - bracket.c[i, j], (i, j)))
    reports.append(is_equivariant(mu, T))
    reports.append(is_self_adjoint(T, B))
    reports.append(is_invariant_metric(B, mu))
    dim_ker = kernel(T).dim
    reports.append(CheckReport("dim Ker T = dim V", True) if dim_ker == inp.r
                   else CheckReport("dim Ker T = dim V", False, ("dim",), dim_ker))
    return reports


def recover_hom_structure(inp: ExtensionInput, name: str | None = None) -> QuadraticHomLie:
    """mu(x, y) = rho(x)(y) and T = pi o k, with every GSV identity re-verified."""
    n = inp.n
    h, k = transfer_maps(inp)
    iota = identity(inp.G.dim)[:, :n]
    rhos = [rho_operator(inp, iota[:, i], h) for i in range(n)]
    mu = product_from_basis(n, lambda i, j: rhos[i][:, j])
    T = k[:n, :]
    require(gsv_battery(inp, rhos, T, mu), f"recovery from {inp.G.name}", ConstructionError)
    pres = AlgebraPresentation(name or f"{inp.g.name}_hom", inp.g.labels, mu, twist=T, form=inp.g.form,
                               form_name=inp.g.form_name)
    return QuadraticHomLie(pres)
