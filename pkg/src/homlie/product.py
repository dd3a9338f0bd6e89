"""The non-associative product on G, the unital algebra A = F x G and its ideals.

On ``G`` the product is ``2xy = mu_G(x, y) + [x, h(y)]_G - [h(x), y]_G``.
It is computed from that closed form and, separately, from the relation
``2 B_G(xy, z) = B_G(mu_G(x,y), z) + B_G(mu_G(z,x), y) + B_G(mu_G(z,y), x)``;
the two routes must agree exactly.

Ideal detection is a scan, not a decision procedure: a returned subspace
is a verified proper two-sided ideal, while finding nothing is evidence
of simplicity rather than a proof.
"""
from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian

import numpy as np

from .algebra import AlgebraPresentation, Product, product_from_basis
from .checks import CheckReport, ConstructionError, is_hom_jacobi, is_hom_morphism, require
from .extension import CentralExtensionBundle, is_coboundary
from .linalg import Subspace, identity, image, inverse, is_zero, kernel, rank, sparse_matmul, unit_vector, zeros

UNIT_LABEL = "one"


def _closed_form(bundle: CentralExtensionBundle) -> Product:
    N, n = bundle.dim, bundle.n
    hG = zeros(N, N)
    hG[:n] = bundle.h  # h followed by the inclusion of g into G
    bG, muG = bundle.bracket_G, bundle.mu_G
    half = Fraction(1, 2)

    def xy(i, j):
        return half * (muG.c[i, j] + bG(unit_vector(N, i), hG[:, j]) - bG(hG[:, i], unit_vector(N, j)))

    return product_from_basis(N, xy, skew=False)


def _metric_route(bundle: CentralExtensionBundle) -> Product:
    N = bundle.dim
    BG, muG = bundle.B_G, bundle.mu_G
    # pair[a, b, :] = B_G(mu_G(a, b), .) as a row vector
    pair = zeros(N, N, N)
    for a, b in cartesian(range(N), repeat=2):
        pair[a, b] = muG.mapped(BG.T, a, b)
    # rhs[(i, j), z] = B_G(xy, z) up to the factor 1/2; solve all pairs at once
    rhs = pair.reshape(N * N, N) + pair.transpose(1, 2, 0).reshape(N * N, N) + pair.transpose(2, 1, 0).reshape(N * N, N)
    sol = sparse_matmul(rhs, inverse(BG).T) * Fraction(1, 2)
    return Product(sol.reshape(N, N, N), skew=False)


def ambient_product(bundle: CentralExtensionBundle) -> Product:
    """The product xy on G; raises ConstructionError if the two derivations disagree."""
    closed = _closed_form(bundle)
    other = _metric_route(bundle)
    for i, j in cartesian(range(bundle.dim), repeat=2):
        d = closed.c[i, j] - other.c[i, j]
        if not is_zero(d):
            raise ConstructionError(CheckReport("product routes agree", False, (i, j), d))
    return closed


@dataclass(frozen=True, eq=False)
class UnitalAlgebra:
    """F x G with (s, x)(t, y) = (st + B_G(x, y), sy + tx + xy); coordinate 0 is the unit."""

    labels: tuple[str, ...]
    product: Product
    bundle: CentralExtensionBundle | None = None

    @property
    def dim(self) -> int:
        return self.product.dim

    @property
    def unit(self) -> np.ndarray:
        return unit_vector(self.dim, 0)

    def presentation(self, name: str) -> AlgebraPresentation:
        return AlgebraPresentation(name, self.labels, self.product)


def _unit_label(existing) -> str:
    lab = UNIT_LABEL
    while lab in existing:
        lab = "_" + lab
    return lab


def build_A(bundle: CentralExtensionBundle, xy: Product | None = None) -> UnitalAlgebra:
    """Assemble F x G.  Simplicity needs theta non-coboundary and a non-abelian bracket; otherwise warn."""
    if is_coboundary(bundle.theta, bundle.lie_bracket) is not None:
        warnings.warn("cocycle is a coboundary; F x G need not be simple", stacklevel=2)
    if bundle.lie_bracket.is_abelian():
        warnings.warn("induced bracket is abelian; F x G need not be simple", stacklevel=2)
    if xy is None:
        xy = ambient_product(bundle)
    N = bundle.dim
    c = zeros(N + 1, N + 1, N + 1)
    c[0, 0, 0] = 1
    for j in range(N):
        c[0, 1 + j, 1 + j] = 1
        c[1 + j, 0, 1 + j] = 1
    for i, j in cartesian(range(N), repeat=2):
        c[1 + i, 1 + j, 0] = bundle.B_G[i, j]
        c[1 + i, 1 + j, 1:] = xy.c[i, j]
    algebra = UnitalAlgebra((_unit_label(bundle.labels),) + bundle.labels, Product(c, skew=False), bundle)
    require([_unit_report(algebra)], "F x G", ConstructionError)
    return algebra


def _unit_report(A: UnitalAlgebra) -> CheckReport:
    p, u = A.product, A.unit
    for j in range(A.dim):
        e = unit_vector(A.dim, j)
        for d in (p(u, e) - e, p(e, u) - e):
            if not is_zero(d):
                return CheckReport("two-sided unit", False, (j,), d)
    return CheckReport("two-sided unit", True)


def ideal_closure(product: Product, seed: Subspace) -> Subspace:
    """Smallest subspace containing ``seed`` and closed under left and right multiplication by everything."""
    n = product.dim
    current = Subspace(n, seed.basis)
    pending = list(current.basis)
    while pending and current.dim < n:
        w = pending.pop()
        for op in (product.left(w), product.right(w)):
            for col in op.T:
                residue = current.reduce(col)
                if residue is not None:
                    current = current + Subspace(n, [residue])
                    pending.append(residue)
    return current


def _random_vector(rng: random.Random, n: int) -> np.ndarray:
    v = zeros(n)
    for i in range(n):
        v[i] = Fraction(rng.randint(-3, 3), rng.choice((1, 2)))
    return v


def scan_seeds(n: int, trials: int, rng_seed: int):
    """Basis vectors, then e_i - e_j for i < j, then ``trials`` seeded random vectors."""
    for i in range(n):
        yield unit_vector(n, i)
    for i in range(n):
        for j in range(i + 1, n):
            yield unit_vector(n, i) - unit_vector(n, j)
    rng = random.Random(rng_seed)
    for _ in range(trials):
        yield _random_vector(rng, n)


def scan_proper_ideals(product: Product, trials: int = 0, rng_seed: int = 0) -> Subspace | None:
    """First proper nonzero two-sided ideal generated by a scanned seed, or None."""
    if trials < 0:
        raise ValueError("trials must be non-negative")
    n = product.dim
    for v in scan_seeds(n, trials, rng_seed):
        if is_zero(v):
            continue
        ideal = ideal_closure(product, Subspace(n, [v]))
        if 0 < ideal.dim < n:
            return ideal
    return None


def quotient_by_unit(A: UnitalAlgebra) -> tuple[Product, np.ndarray]:
    """(mu', T') on A / F.1 in the coordinates of the section (0, x) -> x.

    mu' is the commutator and T'(s, x) = (s, L x), both read modulo the unit.
    """
    if A.bundle is None:
        raise ValueError("quotient needs the algebra's source bundle")
    N = A.dim - 1
    p = A.product
    comm = {}
    for i, j in cartesian(range(A.dim), repeat=2):
        comm[i, j] = p.c[i, j] - p.c[j, i]
    # the unit commutes with everything, so shifting a representative by F.1 changes nothing
    for j in range(A.dim):
        if not is_zero(comm[0, j]):
            raise ConstructionError(CheckReport("quotient well-defined", False, (0, j), comm[0, j]))
    mu_prime = product_from_basis(N, lambda i, j: comm[1 + i, 1 + j][1:])
    t_full = zeros(A.dim, A.dim)
    t_full[0, 0] = 1
    t_full[1:, 1:] = A.bundle.L
    if not is_zero(t_full[1:, 0]):
        raise ConstructionError(CheckReport("twist preserves F.1", False, (0,), t_full[:, 0]))
    t_prime = t_full[1:, 1:]
    is_hom_jacobi(mu_prime, t_prime).raise_if_failed("quotient", ConstructionError)
    return mu_prime, t_prime


def iso_to_G(A: UnitalAlgebra, mu_prime: Product, t_prime: np.ndarray) -> np.ndarray:
    """psi(class of (0, x)) = x, verified to be a bijective Hom-Lie morphism onto (G, mu_G, L)."""
    b = A.bundle
    psi = identity(b.dim)
    is_hom_morphism(psi, (mu_prime, t_prime), (b.mu_G, b.L)).raise_if_failed("psi", ConstructionError)
    if rank(psi) != b.dim:
        raise ConstructionError(CheckReport("psi bijective", False, ("rank",), rank(psi)))
    return psi


def associator_witness(product: Product) -> tuple[tuple[int, int, int], np.ndarray] | None:
    """First basis triple with (xy)z != x(yz), in lexicographic order."""
    n = product.dim
    e = [unit_vector(n, i) for i in range(n)]
    for i, j, k in cartesian(range(n), repeat=3):
        d = product(product.c[i, j], e[k]) - product(e[i], product.c[j, k])
        if not is_zero(d):
            return (i, j, k), d
    return None


def product_battery(bundle: CentralExtensionBundle, xy: Product) -> list[CheckReport]:
    """Identities relating xy to mu_G, h, L and T."""
    N, n = bundle.dim, bundle.n
    reports = []
    bad = next(((i, j) for i, j in cartesian(range(N), repeat=2)
                if not is_zero(xy.c[i, j] - xy.c[j, i] - bundle.mu_G.c[i, j])), None)
    reports.append(CheckReport("commutator is mu_G", True) if bad is None else
                   CheckReport("commutator is mu_G", False, bad,
                               xy.c[bad] - xy.c[bad[::-1]] - bundle.mu_G.c[bad]))

    # x^2 = 0 on a subspace W iff xy + yx = 0 for all x, y in W
    for name, W in (("squares vanish on Ker h", kernel(bundle.h)), ("squares vanish on Im L", image(bundle.L))):
        rep = CheckReport(name, True)
        vs = W.basis
        for a in range(len(vs)):
            for b in range(a, len(vs)):
                d = xy(vs[a], vs[b]) + xy(vs[b], vs[a])
                if not is_zero(d):
                    rep = CheckReport(name, False, (a, b), d)
                    break
            if not rep:
                break
        reports.append(rep)

    T = bundle.base.T
    rep = CheckReport("2 L(x) L(y) = T[x, y]", True)
    for i, j in cartesian(range(n), repeat=2):
        lhs = 2 * xy(bundle.L[:, i], bundle.L[:, j])
        rhs = zeros(N)
        rhs[:n] = bundle.lie_bracket.mapped(T, i, j)
        if not is_zero(lhs - rhs):
            rep = CheckReport("2 L(x) L(y) = T[x, y]", False, (i, j), lhs - rhs)
            break
    reports.append(rep)
    return reports
