"""Quadratic Hom-Lie algebras on h + h* built from a Hom-Lie algebra (h, nu, S).

The dual half acts through the coadjoint representation and the form is
the hyperbolic pairing, so every equivariant Hom-Lie algebra yields a
quadratic one of twice the dimension.
"""
from __future__ import annotations

import numpy as np

from .algebra import AlgebraPresentation, Product
from .checks import AxiomError, hom_lie_battery
from .extension import QuadraticHomLie
from .linalg import identity, unit_vector, zeros


def validate_double_input(h_alg: AlgebraPresentation) -> AlgebraPresentation:
    if h_alg.twist is None:
        raise ValueError(f"algebra {h_alg.name}: doubling needs a twist map")
    for rep in hom_lie_battery(h_alg.product, h_alg.twist):
        if not rep:
            raise AxiomError(rep, f"algebra {h_alg.name}: {rep.describe(h_alg.labels)}")
    return h_alg


def coadjoint_operator(h_alg: AlgebraPresentation, x) -> np.ndarray:
    """Matrix of alpha -> -alpha(nu(x, .)) in dual-basis coordinates."""
    return -h_alg.product.left(x).T


def dual_labels(h_alg: AlgebraPresentation) -> tuple[str, ...]:
    if h_alg.dual_labels is not None:
        return h_alg.dual_labels
    return tuple(f"d_{lab}" for lab in h_alg.labels)


def double_quadratic_homlie(h_alg: AlgebraPresentation, name: str | None = None) -> QuadraticHomLie:
    """mu(x+a, y+b) = nu(x,y) + nu*(x)b - nu*(y)a, T = S + S*, B the hyperbolic pairing."""
    validate_double_input(h_alg)
    m = h_alg.dim
    n = 2 * m
    nu = h_alg.product
    c = zeros(n, n, n)
    c[:m, :m, :m] = nu.c
    for i in range(m):
        co = coadjoint_operator(h_alg, unit_vector(m, i))
        # nu*(x_i) beta_j lands in h*; mu(beta_j, x_i) is its negative
        for j in range(m):
            c[i, m + j, m:] = co[:, j]
            c[m + j, i, m:] = -co[:, j]
    t = zeros(n, n)
    t[:m, :m] = h_alg.twist
    t[m:, m:] = h_alg.twist.T
    b = zeros(n, n)
    b[:m, m:] = identity(m)
    b[m:, :m] = identity(m)
    pres = AlgebraPresentation(
        name or f"{h_alg.name}_double",
        h_alg.labels + dual_labels(h_alg),
        Product(c),
        twist=t,
        form=b,
    )
    return QuadraticHomLie(pres)
