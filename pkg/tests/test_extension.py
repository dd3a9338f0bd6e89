import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from homlie.algebra import AlgebraPresentation, Product
from homlie.checks import AxiomError, is_equivariant, is_jacobi
from homlie.extension import (
    QuadraticHomLie,
    TwistInvertibleError,
    build_h,
    build_k,
    center,
    central_extension,
    choose_a_basis,
    cocycle_theta,
    derived_subalgebra,
    equivariance_defect,
    extension_battery,
    induced_lie_bracket,
    is_coboundary,
    kernel_equals_center,
)
from homlie.linalg import Subspace, as_array, identity, is_zero, kernel, unit_vector, zeros


def vec(q_or_labels, *terms):
    labels = q_or_labels if isinstance(q_or_labels, tuple) else q_or_labels.labels
    v = zeros(len(labels))
    for coeff, lab in terms:
        v[labels.index(lab)] += coeff
    return v


def abelian_hyperbolic(n=2):
    """mu = 0, T = 0 and the identity form on an n-dim space."""
    labels = tuple(f"e{i}" for i in range(n))
    return QuadraticHomLie(AlgebraPresentation("ab", labels, Product.zero(n), twist=zeros(n, n), form=identity(n)))


def test_validation_rejects_bad_input(nu6):
    with pytest.raises(ValueError):
        QuadraticHomLie(nu6)  # no form
    bad = AlgebraPresentation("bad", ("x", "y"), Product.zero(2), twist=as_array([[0, 1], [0, 0]]), form=identity(2))
    with pytest.raises(AxiomError):
        QuadraticHomLie(bad)  # T not self-adjoint for the identity form


def test_abelian_trivial_case():
    q = abelian_hyperbolic()
    assert induced_lie_bracket(q).is_abelian()
    a = choose_a_basis(q)
    assert [list(v) for v in a] == [[1, 0], [0, 1]]
    b = central_extension(q)
    assert b.bracket_G.is_abelian()
    # hyperbolic pairing of a with V, everything else zero
    expected = zeros(4, 4)
    expected[0, 2] = expected[2, 0] = expected[1, 3] = expected[3, 1] = 1
    assert np.all(b.B_G == expected)
    assert is_zero(b.theta)
    assert is_coboundary(b.theta, b.lie_bracket) is not None
    assert is_zero(equivariance_defect(b))
    assert is_equivariant(b.mu_G, b.L)


def test_h_on_abelian_hyperbolic_toy():
    # oracle: h = B^-1 composed with the g-rows of B_G, computed by hand for B = diag(1, 2)
    q = QuadraticHomLie(AlgebraPresentation("ab2", ("e0", "e1"), Product.zero(2), twist=zeros(2, 2),
                                            form=as_array([[1, 0], [0, 2]])))
    b = central_extension(q)
    frozen = as_array([[0, 0, 1, 0], [0, 0, 0, Fraction(1, 2)]])
    assert np.all(b.h == frozen)
    assert np.all(build_h(q.B, b.B_G) == frozen)


def test_invertible_twist_rejected():
    q = QuadraticHomLie(AlgebraPresentation("id", ("e",), Product.zero(1), twist=identity(1), form=identity(1)))
    with pytest.raises(TwistInvertibleError, match="twist map invertible; Hom-Lie product is a Lie bracket"):
        choose_a_basis(q)


def test_nilpotent_a_basis_and_k(nil_hom, nil_bundle):
    assert [list(v) for v in choose_a_basis(nil_hom)] == [list(unit_vector(6, i)) for i in range(3)]
    labels = nil_bundle.labels
    for j in (1, 2, 3):
        assert list(nil_bundle.k[:, nil_hom.labels.index(f"a{j}")]) == list(vec(labels, (1, f"b{j}")))
        assert list(nil_bundle.k[:, nil_hom.labels.index(f"b{j}")]) == list(vec(labels, (1, f"v{j}")))
    assert np.all(build_k(nil_hom, nil_bundle.a_basis) == nil_bundle.k)


SIGMA = {1: 2, 2: 3, 3: 1}


def test_nilpotent_brackets(nil_bundle):
    G, labels = nil_bundle.bracket_G, nil_bundle.labels
    e = lambda lab: vec(labels, (1, lab))
    for i in (1, 2, 3):
        s, s2 = SIGMA[i], SIGMA[SIGMA[i]]
        assert list(G(e(f"a{i}"), e(f"a{s}"))) == list(vec(labels, (1, f"b{s2}"), (1, f"v{s2}")))
        assert list(G(e(f"a{i}"), e(f"b{s}"))) == list(vec(labels, (1, f"v{s2}")))


def test_nilpotent_metric(nil_bundle):
    labels, BG = nil_bundle.labels, nil_bundle.B_G
    idx = labels.index
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            assert BG[idx(f"b{i}"), idx(f"b{j}")] == (i == j)
            assert BG[idx(f"a{i}"), idx(f"v{j}")] == (i == j)
            assert BG[idx(f"a{i}"), idx(f"a{j}")] == 0
            assert BG[idx(f"v{i}"), idx(f"v{j}")] == 0
            for k in (1, 2, 3):
                assert BG[idx(f"b{i}"), idx(f"a{j}")] + BG[idx(f"b{i}"), idx(f"v{k}")] == 0


def test_nilpotent_h_and_L(nil_hom, nil_bundle):
    labels, g = nil_bundle.labels, nil_hom.labels
    h, L = nil_bundle.h, nil_bundle.L
    for j in (1, 2, 3):
        assert is_zero(h[:, labels.index(f"a{j}")])
        assert list(h[:, labels.index(f"b{j}")]) == list(vec(g, (1, f"a{j}")))
        assert list(h[:, labels.index(f"v{j}")]) == list(vec(g, (1, f"b{j}")))
        assert list(L[:, labels.index(f"a{j}")]) == list(vec(labels, (1, f"b{j}")))
        assert list(L[:, labels.index(f"b{j}")]) == list(vec(labels, (1, f"v{j}")))
        assert is_zero(L[:, labels.index(f"v{j}")])
    assert np.all(h @ nil_bundle.k == identity(6))


def test_L_powers(nil_bundle):
    # oracle: repeated matrix products, frozen
    L = nil_bundle.L
    L2 = L @ L
    labels = nil_bundle.labels
    for j in (1, 2, 3):
        assert list(L2[:, labels.index(f"a{j}")]) == list(vec(labels, (1, f"v{j}")))
    assert is_zero(L2 @ L)


def test_nilpotent_theta_and_defect(nil_hom, nil_bundle):
    labels = nil_bundle.labels
    g = nil_hom.labels
    defect = equivariance_defect(nil_bundle)
    for i in (1, 2, 3):
        s, s2 = SIGMA[i], SIGMA[SIGMA[i]]
        x, y = g.index(f"a{i}"), g.index(f"a{s}")
        assert [int(c) for c in nil_bundle.theta[x, y]] == [int(r == s2 - 1) for r in range(3)]
        assert list(defect[x, y]) == list(vec(labels, (1, f"v{s2}")))
    for x in range(9):
        assert is_zero(defect[x, x])


def test_theta_zero_when_a_is_central():
    # T = 0 on an abelian algebra: a spans everything and mu(a, .) = 0
    b = central_extension(abelian_hyperbolic(3))
    theta, ds = cocycle_theta(b.base, b.a_basis)
    assert is_zero(theta) and all(is_zero(d) for d in ds)


def test_nilpotent_not_coboundary(nil_bundle):
    assert is_coboundary(nil_bundle.theta, nil_bundle.lie_bracket) is None
    assert kernel_equals_center(nil_bundle)


def test_nilpotent_center_and_derived(nil_bundle):
    # oracle: intersect the kernels of the six right-multiplication matrices
    lb = nil_bundle.lie_bracket
    b_span = Subspace(6, [unit_vector(6, i) for i in (3, 4, 5)])
    meet = Subspace.full(6)
    for j in range(6):
        meet = meet.intersection(kernel(lb.right(unit_vector(6, j))))
    assert meet == b_span
    assert center(lb) == b_span and derived_subalgebra(lb) == b_span


def test_double12_brackets(double12, double_bundle):
    lb, labels = double_bundle.lie_bracket, double12.labels
    nonzero = {(labels[i], labels[j]): lb.c[i, j] for i in range(12) for j in range(i + 1, 12)
               if not is_zero(lb.c[i, j])}
    assert set(nonzero) == {("x1", "x3"), ("x1", "beta2"), ("x3", "beta2")}
    assert list(nonzero["x1", "x3"]) == list(vec(double12, (-1, "y2")))
    assert list(nonzero["x1", "beta2"]) == list(vec(double12, (1, "alpha3")))
    assert list(nonzero["x3", "beta2"]) == list(vec(double12, (-1, "alpha1")))


def test_double12_center_and_derived(double12, double_bundle):
    lb = double_bundle.lie_bracket
    C = Subspace(12, [vec(double12, (1, lab)) for lab in
                      ("x2", "y1", "y2", "y3", "alpha1", "alpha2", "alpha3", "beta1", "beta3")])
    D = Subspace(12, [vec(double12, (1, lab)) for lab in ("y2", "alpha1", "alpha3")])
    assert center(lb) == C and derived_subalgebra(lb) == D


def test_double12_greedy_a_basis(double12, double_bundle):
    # frozen from the greedy rule over the basis order
    chosen = [double12.labels[list(v).index(1)] for v in double_bundle.a_basis]
    assert chosen == ["x1", "x2", "x3", "alpha2", "beta2", "beta3"]


def test_double12_cocycle_and_center(double_bundle):
    # theta is not a coboundary, yet Ker T is strictly smaller than the center
    assert is_coboundary(double_bundle.theta, double_bundle.lie_bracket) is None
    assert kernel(double_bundle.base.T).dim == 6
    assert center(double_bundle.lie_bracket).dim == 9
    assert not kernel_equals_center(double_bundle)
    assert center(double_bundle.bracket_G).dim == 10


def test_battery_all_hold(nil_bundle, double_bundle):
    for b in (nil_bundle, double_bundle):
        failing = [r.name for r in extension_battery(b) if not r]
        assert failing == []


def test_bundle_labels_avoid_collisions():
    labels = ("v1", "w")
    q = QuadraticHomLie(AlgebraPresentation("c", labels, Product.zero(2), twist=zeros(2, 2), form=identity(2)))
    assert central_extension(q).labels == ("v1", "w", "v_1", "v_2")


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_manufactured_coboundary_is_recognized(seed):
    # theta(x, y) = f0([x, y]) for random f0; the solver must return some valid f
    rng = random.Random(seed)
    c = zeros(4, 4, 4)
    c[0, 1, 2], c[1, 0, 2] = 1, -1
    c[0, 2, 3], c[2, 0, 3] = 1, -1
    bracket = Product(c)
    assert is_jacobi(bracket)
    r = 2
    f0 = as_array([[Fraction(rng.randint(-3, 3), rng.choice([1, 2])) for _ in range(4)] for _ in range(r)])
    theta = zeros(4, 4, r)
    for i in range(4):
        for j in range(4):
            theta[i, j] = f0 @ bracket.c[i, j]
    f = is_coboundary(theta, bracket)
    assert f is not None
    for i in range(4):
        for j in range(4):
            assert np.all(f @ bracket.c[i, j] == theta[i, j])


def test_non_coboundary_detected():
    # abelian bracket: only theta = 0 is a coboundary
    theta = zeros(2, 2, 1)
    theta[0, 1, 0], theta[1, 0, 0] = 1, -1
    assert is_coboundary(theta, Product.zero(2)) is None
