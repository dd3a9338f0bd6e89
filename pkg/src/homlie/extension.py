"""Central extensions of quadratic Hom-Lie algebras with equivariant, non-invertible twist.

Starting from ``(g, mu, T, B)`` with ``dim Ker T = r > 0`` this module
builds the induced Lie bracket ``T o mu``, the quadratic Lie algebra
``G = g + V`` (``dim V = r``), the cocycle that presents ``G`` as a
central extension of ``g``, the maps ``k: g -> G`` and ``h: G -> g``, and
the Hom-Lie algebra ``(G, mu_G, L)`` extending ``(g, mu, T)``.

The complement of ``Im T`` is chosen greedily from the standard basis,
so every output is deterministic.  Other complements give isomorphic
extensions in different coordinates; no canonicalization is attempted.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

import numpy as np

from .algebra import AlgebraPresentation, Product, postcompose, product_from_basis
from .checks import (
    AxiomError,
    CheckReport,
    ConstructionError,
    hom_lie_battery,
    is_anti_self_adjoint,
    is_derivation,
    is_equivariant,
    is_hom_jacobi,
    is_hom_morphism,
    is_invariant_metric,
    is_jacobi,
    is_self_adjoint,
    require,
    subspace_report,
)
from .linalg import (
    Subspace,
    complement,
    form_flat_sharp,
    identity,
    image,
    inverse,
    is_zero,
    kernel,
    rank,
    solve,
    sparse_matmul,
    unit_vector,
    zeros,
)


class TwistInvertibleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class QuadraticHomLie:
    """A validated quadratic Hom-Lie algebra with equivariant twist.

    Wraps an :class:`AlgebraPresentation` that carries both a twist map and
    a form; construction fails with :class:`AxiomError` unless skew-symmetry,
    the twisted Jacobi identity, equivariance, metric invariance and
    self-adjointness all hold.
    """

    presentation: AlgebraPresentation

    def __post_init__(self):
        p = self.presentation
        if p.twist is None or p.form is None:
            raise ValueError(f"algebra {p.name}: a quadratic Hom-Lie algebra needs a twist map and a form")
        for rep in hom_lie_battery(p.product, p.twist, p.form):
            if not rep:
                raise AxiomError(rep, f"algebra {p.name}: {rep.describe(p.labels)}")

    @property
    def mu(self) -> Product:
        return self.presentation.product

    @property
    def T(self) -> np.ndarray:
        return self.presentation.twist

    @property
    def B(self) -> np.ndarray:
        return self.presentation.form

    @property
    def labels(self) -> tuple[str, ...]:
        return self.presentation.labels

    @property
    def name(self) -> str:
        return self.presentation.name

    @property
    def dim(self) -> int:
        return self.presentation.dim


def induced_lie_bracket(q: QuadraticHomLie) -> Product:
    """The Lie bracket [x, y] = T(mu(x, y)); Jacobi, B-invariance and T([x,y]) = [Tx, y] are re-verified."""
    bracket = postcompose(q.T, q.mu)
    for rep in (is_jacobi(bracket), is_invariant_metric(q.B, bracket), is_equivariant(bracket, q.T)):
        rep.raise_if_failed("induced bracket", ConstructionError)
    return bracket


def choose_a_basis(q: QuadraticHomLie) -> list[np.ndarray]:
    """Greedy standard-basis complement of Im T, one vector per kernel dimension."""
    comp = complement(image(q.T))
    if comp.dim == 0:
        raise TwistInvertibleError("twist map invertible; Hom-Lie product is a Lie bracket")
    return comp.vectors()


def build_k(q: QuadraticHomLie, a_basis) -> np.ndarray:
    """k(x) = T(x) + sum_i B(a_i, x) v_i as an (n + r) x n matrix."""
    n, r = q.dim, len(a_basis)
    k = zeros(n + r, n)
    k[:n] = q.T
    for i, a in enumerate(a_basis):
        k[n + i] = a @ q.B
    if rank(k) != n:
        raise ConstructionError(CheckReport("k injective", False, ("rank",), rank(k)))
    return k


def extension_metric(q: QuadraticHomLie, a_basis) -> np.ndarray:
    """Gram matrix of B_G on G = g + V.

    In the adapted basis (a_1..a_r, RREF basis t_p of Im T, v_1..v_r):
    B_G(t_p, t_q) = B(t_p, y_q) for any y_q with T y_q = t_q, B_G(a_i, v_j)
    = delta_ij, every other pairing zero.  The value B(t_p, y_q) does not
    depend on the representative y_q; that is checked on Ker T rather
    than assumed.
    """
    n, r = q.dim, len(a_basis)
    N = n + r
    T, B = q.T, q.B
    ts = image(T).vectors()
    s = len(ts)
    for w in kernel(T).basis:
        for p, t in enumerate(ts):
            if t @ B @ w != 0:
                raise ConstructionError(
                    CheckReport("representative independence", False, (p,), t @ B @ w),
                    "B(Im T, Ker T) must vanish",
                )
    reps = [solve(T, t) for t in ts]
    adapted = zeros(N, N)
    gram = zeros(N, N)
    for i, a in enumerate(a_basis):
        adapted[:n, i] = a
        adapted[n + i, r + s + i] = 1
        gram[i, r + s + i] = gram[r + s + i, i] = 1
    for p, t in enumerate(ts):
        adapted[:n, r + p] = t
        for qq, y in enumerate(reps):
            gram[r + p, r + qq] = t @ B @ y
    to_adapted = inverse(adapted)
    return to_adapted.T @ gram @ to_adapted


def build_h(b: np.ndarray, b_ext: np.ndarray) -> np.ndarray:
    """h = B# o iota* o B_G-flat : G -> g, with g the leading block of G."""
    n = b.shape[0]
    _, b_sharp = form_flat_sharp(b)
    b_ext_flat, _ = form_flat_sharp(b_ext)
    return b_sharp @ b_ext_flat[:n, :]


def cocycle_theta(q: QuadraticHomLie, a_basis) -> tuple[np.ndarray, list[np.ndarray]]:
    """theta(x, y) = sum_i B(D_i x, y) v_i with D_i = mu(a_i, .).

    Returns the tensor ``theta[x, y, i]`` and the derivations D_i.
    """
    n, r = q.dim, len(a_basis)
    derivations = [q.mu.left(a) for a in a_basis]
    theta = zeros(n, n, r)
    for i, d in enumerate(derivations):
        theta[:, :, i] = d.T @ q.B
    return theta, derivations


def extend_hom_structure(q: QuadraticHomLie, k: np.ndarray) -> tuple[Product, np.ndarray]:
    """mu_G(x + u, y + v) = mu(x, y) and L(x + u) = k(x)."""
    n = q.dim
    N = k.shape[0]
    c = zeros(N, N, N)
    c[:n, :n, :n] = q.mu.c
    L = zeros(N, N)
    L[:, :n] = k
    return Product(c), L


def is_coboundary(theta: np.ndarray, bracket: Product) -> np.ndarray | None:
    """A linear f: g -> V with theta(x, y) = f([x, y]) for all x, y, or None."""
    n = bracket.dim
    r = theta.shape[2]
    rows, rhs = [], []
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(r):
                row = zeros(r * n)
                row[l * n:(l + 1) * n] = bracket.c[i, j]
                rows.append(row)
                rhs.append(theta[i, j, l])
    if not rows:
        return zeros(r, n)
    sol = solve(np.vstack(rows), rhs)
    return None if sol is None else sol.reshape(r, n)


def center(bracket: Product) -> Subspace:
    n = bracket.dim
    if n == 0:
        return Subspace(0)
    return kernel(np.vstack([bracket.right(unit_vector(n, j)) for j in range(n)]))


def derived_subalgebra(bracket: Product) -> Subspace:
    n = bracket.dim
    return Subspace(n, [bracket.c[i, j] for i in range(n) for j in range(n)])


def _v_labels(existing, r: int) -> tuple[str, ...]:
    prefix = "v"
    while any(f"{prefix}{i + 1}" in existing for i in range(r)):
        prefix += "_"
    return tuple(f"{prefix}{i + 1}" for i in range(r))


@dataclass(frozen=True, eq=False)
class CentralExtensionBundle:
    """Everything produced from one quadratic Hom-Lie algebra.

    Coordinates on G list the basis of g first, then v_1..v_r.
    ``theta`` is indexed ``theta[x, y, i]`` with values in V.
    """

    base: QuadraticHomLie
    labels: tuple[str, ...]
    a_basis: tuple[np.ndarray, ...]
    lie_bracket: Product
    bracket_G: Product
    B_G: np.ndarray
    k: np.ndarray
    h: np.ndarray
    theta: np.ndarray
    derivations: tuple[np.ndarray, ...]
    mu_G: Product
    L: np.ndarray

    @property
    def n(self) -> int:
        return self.base.dim

    @property
    def r(self) -> int:
        return len(self.a_basis)

    @property
    def dim(self) -> int:
        return self.n + self.r

    @property
    def pi(self) -> np.ndarray:
        return identity(self.dim)[: self.n]

    @property
    def iota(self) -> np.ndarray:
        return identity(self.dim)[:, : self.n]

    @property
    def V(self) -> Subspace:
        return Subspace(self.dim, [unit_vector(self.dim, self.n + i) for i in range(self.r)])

    def theta_on_G(self) -> np.ndarray:
        """theta(pi X, pi Y) as an (N, N, N) tensor in G coordinates."""
        N, n = self.dim, self.n
        out = zeros(N, N, N)
        out[:n, :n, n:] = self.theta
        return out

    def lie_presentation(self, name: str | None = None) -> AlgebraPresentation:
        return AlgebraPresentation(
            name or f"{self.base.name}_ext", self.labels, self.bracket_G, form=self.B_G, form_name="BG"
        )

    def hom_presentation(self, name: str | None = None) -> AlgebraPresentation:
        return AlgebraPresentation(
            name or f"{self.base.name}_exthom", self.labels, self.mu_G, twist=self.L, twist_name="L"
        )


def equivariance_defect(bundle: CentralExtensionBundle) -> np.ndarray:
    """L(mu_G(X, Y)) - mu_G(L X, Y) on basis pairs; equals theta(pi X, pi Y)."""
    N = bundle.dim
    mu_G, L = bundle.mu_G, bundle.L
    out = zeros(N, N, N)
    for i, j in cartesian(range(N), repeat=2):
        out[i, j] = mu_G.mapped(L, i, j) - mu_G(L[:, i], unit_vector(N, j))
    return out


def _matrix_report(name: str, m: np.ndarray) -> CheckReport:
    for idx, x in np.ndenumerate(m):
        if x != 0:
            return CheckReport(name, False, idx, x)
    return CheckReport(name, True)


def _tensor_report(name: str, t: np.ndarray) -> CheckReport:
    for i, j in cartesian(range(t.shape[0]), range(t.shape[1])):
        if not is_zero(t[i, j]):
            return CheckReport(name, False, (i, j), t[i, j].copy())
    return CheckReport(name, True)


def extension_battery(bundle: CentralExtensionBundle) -> list[CheckReport]:
    """Every identity the extension is guaranteed to satisfy, one report each."""
    n, r, N = bundle.n, bundle.r, bundle.dim
    q = bundle.base
    B, BG, k, h, L = q.B, bundle.B_G, bundle.k, bundle.h, bundle.L
    bracket, bracket_G = bundle.lie_bracket, bundle.bracket_G
    V = bundle.V
    pi, iota = bundle.pi, bundle.iota
    a_in_G = Subspace(N, [iota @ a for a in bundle.a_basis])
    reports = []

    def add(name, rep):
        reports.append(CheckReport(name, rep.holds, rep.witness, rep.defect))

    add("jacobi for bracket_G", is_jacobi(bracket_G))
    add("B_G invariant metric", is_invariant_metric(BG, bracket_G))
    add("V central", _matrix_report("V central", np.hstack([bracket_G.left(v) for v in V.basis])))
    add("V isotropic", _matrix_report("V isotropic", BG[n:, n:]))
    add("k injective", CheckReport("k injective", True) if rank(k) == n
        else CheckReport("k injective", False, ("rank",), rank(k)))
    v_perp = kernel(V.basis @ BG)
    add("Im k = V-perp", subspace_report("", image(k), v_perp))
    add("h o k = Id", _matrix_report("", sparse_matmul(h, k) - identity(n)))
    add("Ker h = a", subspace_report("", kernel(h), a_in_G))
    g_perp = kernel(iota.T @ BG)
    add("Ker h = g-perp", subspace_report("", kernel(h), g_perp))
    add("G = Ker h + Im k", CheckReport("", True) if (kernel(h) + image(k)).dim == N
        and kernel(h).dim + rank(k) == N else CheckReport("", False, ("dim",), (kernel(h) + image(k)).dim))
    add("B_G(X, y) = B(h X, y)", _matrix_report("", iota.T @ BG - sparse_matmul(B.T, h)))
    add("h self-adjoint for B_G", is_self_adjoint(iota @ h, BG))

    # B(x, y) = B_G(k x, y + u) for u in {0, v_1}
    kBG = sparse_matmul(k.T, BG)
    rel = kBG[:, :n] - B
    if r:
        rel = np.hstack([rel, (kBG[:, :n] + kBG[:, n:n + 1]) - B])
    add("B = B_G(k x, y + u)", _matrix_report("", rel))

    def k_then_bracket(i, j):
        # [k e_i, e_j]_G summed over the nonzero coordinates of k e_i
        return sum((x * bracket_G.c[a, j] for a, x in enumerate(k[:, i]) if x != 0), zeros(N))

    add("k[x,y] = [k x, y]_G", _tensor_report("", _pairs(n, lambda i, j: bracket.mapped(k, i, j)
                                                      - k_then_bracket(i, j))))
    theta_G = bundle.theta_on_G()
    # pi e_i is e_i for i < n and 0 on V, so [pi X, pi Y] lifts to a padded g-bracket
    lifted = zeros(N, N, N)
    lifted[:n, :n, :n] = bracket.c
    if not is_zero(pi - np.hstack([identity(n), zeros(n, r)])):
        raise ConstructionError(CheckReport("pi is the coordinate projection", False, ("pi",), pi))
    add("[x+u, y+v]_G = [x,y] + theta", _tensor_report("", _pairs(N, lambda i, j: bracket_G.c[i, j]
                                                                   - lifted[i, j]
                                                                   - theta_G[i, j])))
    add("theta skew", _tensor_report("", _pairs(n, lambda i, j: bundle.theta[i, j] + bundle.theta[j, i])))
    for i, d in enumerate(bundle.derivations):
        add(f"D{i + 1} derivation", is_derivation(d, bracket))
        add(f"D{i + 1} anti-self-adjoint", is_anti_self_adjoint(d, B))

    add("L self-adjoint for B_G", is_self_adjoint(L, BG))
    add("B_G(L X, Y) = B(pi X, pi Y)", _matrix_report("", sparse_matmul(L.T, BG) - sparse_matmul(sparse_matmul(pi.T, B), pi)))
    add("Ker L = V", subspace_report("", kernel(L), V))
    add("Im L = V-perp", subspace_report("", image(L), v_perp))
    add("hom-jacobi for (mu_G, L)", is_hom_jacobi(bundle.mu_G, L))
    add("pi hom-lie epimorphism", is_hom_morphism(pi, (bundle.mu_G, L), (q.mu, q.T)))
    add("pi surjective", CheckReport("", True) if rank(pi) == n else CheckReport("", False, ("rank",), rank(pi)))
    add("equivariance defect = theta", _tensor_report("", equivariance_defect(bundle) - theta_G))
    add("L|g = k", _matrix_report("", L @ iota - k))
    return reports


def _pairs(n: int, fn) -> np.ndarray:
    rows = [[fn(i, j) for j in range(n)] for i in range(n)]
    m = len(rows[0][0]) if n else 0
    out = zeros(n, n, m)
    for i in range(n):
        for j in range(n):
            out[i, j] = rows[i][j]
    return out


def central_extension(q: QuadraticHomLie) -> CentralExtensionBundle:
    """Build and fully verify the quadratic central extension of ``q``."""
    bracket = induced_lie_bracket(q)
    a_basis = choose_a_basis(q)
    n, r = q.dim, len(a_basis)
    k = build_k(q, a_basis)
    bracket_G = product_from_basis(
        n + r, lambda i, j: q.mu.mapped(k, i, j) if i < n and j < n else zeros(n + r)
    )
    B_G = extension_metric(q, a_basis)
    h = build_h(q.B, B_G)
    theta, derivations = cocycle_theta(q, a_basis)
    mu_G, L = extend_hom_structure(q, k)
    bundle = CentralExtensionBundle(
        base=q,
        labels=q.labels + _v_labels(q.labels, r),
        a_basis=tuple(a_basis),
        lie_bracket=bracket,
        bracket_G=bracket_G,
        B_G=B_G,
        k=k,
        h=h,
        theta=theta,
        derivations=tuple(derivations),
        mu_G=mu_G,
        L=L,
    )
    require(extension_battery(bundle), f"extension of {q.name}", ConstructionError)
    return bundle


def kernel_equals_center(bundle: CentralExtensionBundle) -> CheckReport:
    """Ker T == C(g) for the induced bracket; guaranteed when theta is not a coboundary."""
    return subspace_report("Ker T = C(g)", kernel(bundle.base.T), center(bundle.lie_bracket))
