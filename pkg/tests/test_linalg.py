"""Row reduction, kernels, images, membership over exact cyclotomic scalars."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from skewbrack.linalg import (
    Matrix,
    det,
    image_basis,
    kernel_basis,
    mat_inverse,
    rank,
    rref,
    solve_membership,
    span_equal,
    vec_is_zero,
)
from skewbrack.scalars import Cyc


def im(rows, order=1):
    return Matrix(order, rows)


def test_rref_known():
    m = im([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    r, pivots = rref(m)
    assert pivots == (0, 1)
    assert r.rows[0] == (Cyc.of(1, 1), Cyc.of(0, 1), Cyc.of(-1, 1))
    assert r.rows[1] == (Cyc.of(0, 1), Cyc.of(1, 1), Cyc.of(2, 1))
    assert all(not e for e in r.rows[2])


def test_kernel_basis_structure():
    m = im([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    ker = kernel_basis(m)
    assert len(ker) == 1
    v = ker[0]
    assert v[2] == 1
    assert vec_is_zero(m.apply(v))


def test_image_of_one_minus_reflection():
    # 1 - g for g = diag(-1, 1) has image spanned by e1.
    g = im([[-1, 0], [0, 1]])
    one_minus = Matrix.identity(2, 1) - g
    basis = image_basis(one_minus)
    assert basis == [(Cyc.one(1), Cyc.zero(1))]


def test_solve_membership():
    vs = [(Cyc.of(1, 1), Cyc.of(0, 1)), (Cyc.of(1, 1), Cyc.of(1, 1))]
    target = (Cyc.of(3, 1), Cyc.of(2, 1))
    coeffs = solve_membership(vs, target, 1)
    assert coeffs == [Cyc.of(1, 1), Cyc.of(2, 1)]
    outside = (Cyc.of(0, 1), Cyc.of(0, 1))
    assert solve_membership([], outside, 1) == []
    assert solve_membership([vs[0]], (Cyc.of(0, 1), Cyc.of(1, 1)), 1) is None


def test_inverse_and_det():
    order = 4
    z = Cyc.zeta(order)
    m = Matrix(order, [[z, 1], [0, z]])
    assert det(m) == z * z
    inv = mat_inverse(m)
    assert m * inv == Matrix.identity(2, order)
    singular = im([[1, 2], [2, 4]])
    assert det(singular).is_zero()
    with pytest.raises(ValueError):
        mat_inverse(singular)


def test_span_equal():
    a = [(Cyc.of(1, 1), Cyc.of(1, 1))]
    b = [(Cyc.of(2, 1), Cyc.of(2, 1))]
    c = [(Cyc.of(1, 1), Cyc.of(0, 1))]
    assert span_equal(a, b, 1)
    assert not span_equal(a, c, 1)
    assert span_equal([], [(Cyc.zero(1), Cyc.zero(1))], 1)


def _rand_matrix(data, order, nrows, ncols):
    return Matrix(
        order,
        [
            [
                Fraction(data.draw(st.integers(-4, 4)), data.draw(st.integers(1, 2)))
                for _ in range(ncols)
            ]
            for _ in range(nrows)
        ],
    )


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_rank_nullity_and_kernel_annihilation(data):
    order = data.draw(st.sampled_from([1, 4]))
    nrows = data.draw(st.integers(1, 4))
    ncols = data.draw(st.integers(1, 4))
    m = _rand_matrix(data, order, nrows, ncols)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == ncols
    for v in ker:
        assert vec_is_zero(m.apply(v))
    assert len(image_basis(m)) == rank(m)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_membership_reconstructs_target(data):
    order = 1
    n = data.draw(st.integers(1, 4))
    k = data.draw(st.integers(1, 3))
    vecs = [
        tuple(Cyc.of(data.draw(st.integers(-3, 3)), order) for _ in range(n))
        for _ in range(k)
    ]
    weights = [data.draw(st.integers(-3, 3)) for _ in range(k)]
    target = tuple(
        sum((Cyc.of(w, order) * v[i] for w, v in zip(weights, vecs)), Cyc.zero(order))
        for i in range(n)
    )
    coeffs = solve_membership(vecs, target, order)
    assert coeffs is not None
    rebuilt = tuple(
        sum((c * v[i] for c, v in zip(coeffs, vecs)), Cyc.zero(order))
        for i in range(n)
    )
    assert rebuilt == target
