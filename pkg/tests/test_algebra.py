from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from homlie.algebra import (
    AlgebraPresentation,
    Product,
    direct_sum,
    format_vector,
    postcompose,
    product_from_basis,
    vector_terms,
)
from homlie.linalg import as_array, identity, unit_vector, zeros

rationals = st.builds(Fraction, st.integers(-3, 3), st.sampled_from([1, 2]))


@st.composite
def skew_products(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    c = zeros(n, n, n)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                x = draw(rationals)
                c[i, j, k] = x
                c[j, i, k] = -x
    return Product(c)


def heisenberg():
    c = zeros(3, 3, 3)
    c[0, 1, 2], c[1, 0, 2] = 1, -1
    return AlgebraPresentation("heis", ("x", "y", "z"), Product(c))


def test_skew_enforced():
    c = zeros(2, 2, 2)
    c[0, 1, 0] = 1
    with pytest.raises(ValueError):
        Product(c)
    assert not Product(c, skew=False).skew


def test_shape_checked():
    with pytest.raises(ValueError):
        Product(zeros(2, 2, 3))


def test_constants_read_only():
    p = heisenberg().product
    with pytest.raises(ValueError):
        p.c[0, 1, 2] = 5


def test_operators_heisenberg():
    p = heisenberg().product
    x, y = unit_vector(3, 0), unit_vector(3, 1)
    assert p(x, y).tolist() == [0, 0, 1]
    assert p.left(x)[:, 1].tolist() == [0, 0, 1]
    assert p.right(y)[:, 0].tolist() == [0, 0, 1]
    assert not p.is_abelian() and Product.zero(3).is_abelian()


@given(skew_products(), st.data())
@settings(max_examples=40, deadline=None)
def test_sparse_evaluation_matches_einsum(p, data):
    n = p.dim
    x = as_array([data.draw(rationals) for _ in range(n)])
    y = as_array([data.draw(rationals) for _ in range(n)])
    dense = np.einsum("i,j,ijk->k", x, y, p.c)
    assert np.all(p(x, y) == dense)
    assert np.all(p.left(x) @ y == dense)
    assert np.all(p.right(y) @ x == dense)


@given(skew_products(), st.data())
@settings(max_examples=40, deadline=None)
def test_postcompose_and_mapped(p, data):
    n = p.dim
    f = as_array([[data.draw(rationals) for _ in range(n)] for _ in range(n)])
    q = postcompose(f, p)
    for i in range(n):
        for j in range(n):
            assert np.all(q.c[i, j] == f @ p.c[i, j])
            assert np.all(p.mapped(f, i, j) == f @ p.c[i, j])


def test_product_from_basis():
    p = product_from_basis(2, lambda i, j: unit_vector(2, 0) * (i - j))
    assert p.c[1, 0].tolist() == [1, 0]


def test_presentation_validation():
    p = Product.zero(2)
    with pytest.raises(ValueError):
        AlgebraPresentation("a", ("x", "x"), p)
    with pytest.raises(ValueError):
        AlgebraPresentation("a", ("x", "1y"), p)
    with pytest.raises(ValueError):
        AlgebraPresentation("a", ("x",), p)
    with pytest.raises(ValueError):
        AlgebraPresentation("a", ("x", "y"), p, twist=identity(3))
    with pytest.raises(ValueError):
        AlgebraPresentation("a", ("x", "y"), p, dual_labels=("u",))


def test_vector_by_labels():
    h = heisenberg()
    assert h.vector({"x": 1, "z": "1/2"}).tolist() == [1, 0, Fraction(1, 2)]
    assert h.vector("y").tolist() == [0, 1, 0]
    with pytest.raises(KeyError):
        h.vector("w")


def test_presentation_equality():
    h = heisenberg()
    assert h == h.with_(name="other")
    assert h != h.with_(twist=identity(3))


def test_direct_sum():
    h = heisenberg()
    k = AlgebraPresentation("k", ("u",), Product.zero(1), twist=identity(1))
    s = direct_sum(h, k)
    assert s.labels == ("x", "y", "z", "u")
    assert s.product.c[0, 1, 2] == 1 and s.twist[3, 3] == 1 and s.twist[0, 0] == 0
    with pytest.raises(ValueError):
        direct_sum(h, h)


def test_format_vector():
    labels = ("y2", "v3")
    assert format_vector(as_array([-1, Fraction(1, 2)]), labels) == "-1 y2 + 1/2 v3"
    assert format_vector(zeros(2), labels) == "0"
    assert vector_terms(as_array([0, 2]), labels) == {"v3": 2}
