from fractions import Fraction
from itertools import combinations, permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from skewbrack.linalg import Matrix, mat_inverse
from skewbrack.polyvec import Poly, Polyvector, circle_product, schouten
from skewbrack.scalars import Cyc
from skewbrack.koszul import (
    KoszulElt,
    KoszulTensor2,
    act_koszul,
    act_koszul2,
    c_coeff,
    chain_bracket_avatar,
    chain_circle_avatar,
    chain_circle_component,
    diagonal,
    f_k,
    homotopy_residual,
    koszul_diff,
    koszul2_diff,
    phi,
    triple_splits,
    xi,
    zeta,
)


def mat(order, rows):
    return Matrix(order, [[Cyc.of(v, order) for v in r] for r in rows])


def test_xi_values():
    for t in range(1, 5):
        for r in range(1, t + 1):
            assert xi(0, t, 0, r) == Fraction(1, factorial(t))
    for s in range(0, 4):
        for t in range(1, 5):
            assert xi(s, t, 0, t) == Fraction(factorial(s), factorial(s + t))
    assert xi(1, 1, 1, 1) == Fraction(1, 6)
    assert xi(1, 2, 1, 1) == Fraction(1, 12)


def test_c_coeff_values():
    for t in range(1, 5):
        for r in range(1, t + 1):
            assert c_coeff(0, t, 0, r) == Fraction(1, factorial(t))
    assert c_coeff(1, 2, 1, 1) == Fraction(1, 12)
    assert c_coeff(1, 1, 1, 1) == Fraction(1, 6)
    # sign alternates with z (and s z)
    assert c_coeff(0, 1, 1, 1) == -xi(0, 1, 1, 1)
    assert c_coeff(1, 1, 2, 1) == xi(1, 1, 2, 1)


def test_zeta_values():
    for m in range(0, 5):
        assert zeta(1, 1, 1, 1, m) == 1
    # magnitude is 1/t!, independent of r and of the slot beyond its sign
    assert zeta(2, 2, 1, 1, 2) == 1
    assert zeta(1, 2, 1, 1, 2) == -1
    assert zeta(2, 3, 2, 1, 3) == Fraction(1, 2)
    assert zeta(2, 3, 2, 2, 3) == Fraction(1, 2)
    assert zeta(1, 2, 3, 2, 4) == Fraction(-1, 6)


def test_koszul_diff_degree_one():
    d = koszul_diff(KoszulElt.basis(2, 1, (0,)))
    expected = KoszulElt(
        2,
        1,
        {
            ((), (1, 0), (0, 0)): Cyc.one(1),
            ((), (0, 0), (1, 0)): -Cyc.one(1),
        },
    )
    assert d == expected


def test_koszul_diff_squares_to_zero():
    n = 3
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            e = KoszulElt(n, 1, {(idx, (1, 0, 0), (0, 2, 0)): Cyc.one(1)})
            assert koszul_diff(koszul_diff(e)).is_zero()


def test_koszul2_diff_squares_to_zero():
    n = 2
    e = KoszulTensor2.term(n, 1, (0,), (1,), (0, 0), (1, 1), (0, 0))
    assert koszul2_diff(koszul2_diff(e)).is_zero()


def test_f_k_is_chain_map():
    n = 3
    cases = [
        ((0,), (1,), (0, 0, 0), (0, 1, 0), (0, 0, 0)),
        ((0, 2), (), (1, 0, 0), (0, 0, 1), (0, 0, 0)),
        ((), (1, 2), (0, 0, 0), (2, 0, 0), (0, 1, 0)),
    ]
    for s_idx, z_idx, el, em, er in cases:
        e = KoszulTensor2.term(n, 1, s_idx, z_idx, el, em, er)
        assert koszul_diff(f_k(e)) == f_k(koszul2_diff(e))


def test_diagonal_of_degree_two():
    e = KoszulElt.basis(3, 1, (0, 1))
    got = diagonal(e)
    z = (0, 0, 0)
    expected = KoszulTensor2(
        3,
        1,
        {
            ((), (0, 1), z, z, z): Cyc.one(1),
            ((0,), (1,), z, z, z): Cyc.one(1),
            ((1,), (0,), z, z, z): -Cyc.one(1),
            ((0, 1), (), z, z, z): Cyc.one(1),
        },
    )
    assert got == expected


def test_diagonal_is_chain_map():
    n = 3
    for k in range(0, n + 1):
        for idx in combinations(range(n), k):
            e = KoszulElt(n, 1, {(idx, (0, 1, 0), (0, 0, 0)): Cyc.one(1)})
            assert koszul2_diff(diagonal(e)) == diagonal(koszul_diff(e))


def test_triple_splits_match_iterated_diagonal():
    # apply diagonal, then diagonal on the right factor; compare signs
    idx = (0, 1, 2)
    from_triples = {}
    for p1, p2, p3, sgn in triple_splits(idx):
        from_triples[(p1, p2, p3)] = from_triples.get((p1, p2, p3), 0) + sgn
    iterated = {}
    e = KoszulElt.basis(3, 1, idx)
    for (s_idx, z_idx, el, em, er), c in diagonal(e).terms.items():
        inner = diagonal(KoszulElt.basis(3, 1, z_idx))
        for (s2, z2, el2, em2, er2), c2 in inner.terms.items():
            key = (s_idx, s2, z2)
            val = 1 if (c * c2) == 1 else -1
            iterated[key] = iterated.get(key, 0) + val
    assert from_triples == iterated


def test_phi_degree_zero_monomial():
    # phi(1 (x) x1 (x) 1) = 1 (x) o(x1) (x) 1
    e = KoszulTensor2.term(2, 1, (), (), (0, 0), (1, 0), (0, 0))
    assert phi(e) == KoszulElt.basis(2, 1, (0,))


def test_d_phi_on_monomials():
    # d phi(1 (x) m (x) 1) = m (x) 1 - 1 (x) m for monomials m, t <= 4
    n = 2
    for em in [(1, 0), (2, 0), (1, 1), (2, 1), (2, 2), (3, 1)]:
        e = KoszulTensor2.term(n, 1, (), (), (0, 0), em, (0, 0))
        got = koszul_diff(phi(e))
        z = (0, 0)
        expected = KoszulElt(n, 1, {((), em, z): Cyc.one(1), ((), z, em): -Cyc.one(1)})
        assert got == expected


def test_phi_repeated_wedge_output_dies():
    # middle variable already present in a wedge block contributes nothing
    e = KoszulTensor2.term(2, 1, (0,), (), (0, 0), (1, 0), (0, 0))
    assert phi(e).is_zero()


def test_phi_one_one_frozen():
    # phi(1 (x) o(x1) (x) x2 (x) o(x3) (x) 1) = -(1/6) o(x1,x2,x3)
    e = KoszulTensor2.term(3, 1, (0,), (2,), (0, 0, 0), (0, 1, 0), (0, 0, 0))
    got = phi(e)
    expected = KoszulElt.basis(3, 1, (0, 1, 2)).scale(Fraction(-1, 6))
    assert got == expected


def phi_literal(e: KoszulTensor2) -> KoszulElt:
    """Reference implementation enumerating the permutation sum."""
    n, order = e.n, e.order
    out = {}

    def put(key, c):
        out[key] = out.get(key, Cyc.zero(order)) + c

    from skewbrack.polyvec import sort_sign

    for (s_idx, z_idx, el, em, er), c in e.terms.items():
        s, z = len(s_idx), len(z_idx)
        factors = []
        for i, a in enumerate(em):
            factors.extend([i] * a)
        t = len(factors)
        if t == 0:
            continue
        for sigma in permutations(range(t)):
            for r in range(1, t + 1):
                i = factors[sigma[r - 1]]
                wsgn, wkey = sort_sign(z_idx + (i,) + s_idx)
                if wsgn == 0:
                    continue
                left = list(el)
                for p in range(r - 1):
                    left[factors[sigma[p]]] += 1
                right = list(er)
                for p in range(r, t):
                    right[factors[sigma[p]]] += 1
                put((wkey, tuple(left), tuple(right)), c * (c_coeff(s, t, z, r) * wsgn))
    return KoszulElt(n, order, out)


def test_phi_matches_literal_enumeration():
    n = 3
    cases = [
        ((), (), (0, 0, 0), (2, 1, 0), (0, 0, 0)),
        ((0,), (), (0, 0, 0), (0, 2, 1), (0, 0, 0)),
        ((), (2,), (1, 0, 0), (0, 3, 0), (0, 0, 0)),
        ((0,), (2,), (0, 0, 0), (0, 2, 0), (0, 0, 1)),
        ((0, 1), (), (0, 0, 0), (0, 0, 3), (0, 0, 0)),
    ]
    for s_idx, z_idx, el, em, er in cases:
        e = KoszulTensor2.term(n, 1, s_idx, z_idx, el, em, er)
        assert phi(e) == phi_literal(e)


def test_homotopy_residual_small():
    n = 2
    for s_idx in [(), (0,), (1,)]:
        for z_idx in [(), (0,), (1,)]:
            for em in [(1, 0), (0, 1), (1, 1), (2, 0)]:
                e = KoszulTensor2.term(n, 1, s_idx, z_idx, (0, 0), em, (0, 0))
                if e.is_zero():
                    continue
                assert homotopy_residual(e).is_zero()


def test_phi_gl_equivariance():
    n = 2
    shear = mat(1, [[1, 1], [0, 1]])
    rot = Matrix(4, [[Cyc.zero(4), -Cyc.one(4)], [Cyc.one(4), Cyc.zero(4)]])
    for m in [shear]:
        for s_idx, z_idx, em in [((), (), (2, 1)), ((0,), (), (0, 2)), ((0,), (1,), (1, 1))]:
            e = KoszulTensor2.term(n, 1, s_idx, z_idx, (0, 0), em, (0, 0))
            assert phi(act_koszul2(e, m)) == act_koszul(phi(e), m)
    for s_idx, z_idx, em in [((), (), (2, 1)), ((0,), (), (0, 2))]:
        e = KoszulTensor2.term(n, 4, s_idx, z_idx, (0, 0), em, (0, 0))
        assert phi(act_koszul2(e, rot)) == act_koszul(phi(e), rot)


def test_act_koszul_composition():
    n = 2
    a = mat(1, [[1, 1], [0, 1]])
    b = mat(1, [[0, 1], [1, 0]])
    e = KoszulElt(n, 1, {((0,), (1, 0), (0, 1)): Cyc.one(1)})
    assert act_koszul(act_koszul(e, a), b) == act_koszul(e, b * a)


def worked_example_small():
    """The rank-one sign action pair on k^3 used in the worked examples."""
    order = 1
    g = mat(order, [[-1, 0, 0], [0, 1, 0], [0, 0, 1]])
    h = mat(order, [[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    x = Polyvector.term(1, (0, 0, 0), (0, 1), order)
    y = Polyvector.term(1, (0, 1, 0), (2, 1), order)
    return g, h, x, y


def test_chain_bracket_sign_example():
    # [d1^d2 g, x2 d3^d2 h] = d1^d3^d2 gh = -d1^d2^d3 gh, computed on chains
    g, h, x, y = worked_example_small()
    got = chain_bracket_avatar(x, g, y, h)
    assert got == Polyvector.term(-1, (0, 0, 0), (0, 1, 2), 1)
    # and through the closed formula
    sign = -1 if ((x.degree() - 1) * (y.degree() - 1)) % 2 else 1
    closed = circle_product(x, y, g) - circle_product(y, x, h) * sign
    assert closed == got


def test_chain_bracket_rank_two_example():
    # [d1^d2^d3 s, x3 d4^d5 t] = d1^d2^d4^d5 st on k^5
    order = 1
    s5 = mat(order, [[-1, 0, 0, 0, 0], [0, -1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    t5 = mat(order, [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, -1, 0], [0, 0, 0, 0, -1]])
    x = Polyvector.term(1, (0, 0, 0, 0, 0), (0, 1, 2), order)
    y = Polyvector.term(1, (0, 0, 1, 0, 0), (3, 4), order)
    got = chain_bracket_avatar(x, s5, y, t5)
    assert got == Polyvector.term(1, (0, 0, 0, 0, 0), (0, 1, 3, 4), order)
    sign = -1 if ((x.degree() - 1) * (y.degree() - 1)) % 2 else 1
    closed = circle_product(x, y, s5) - circle_product(y, x, t5) * sign
    assert closed == got


def test_chain_circle_trivial_group_is_schouten_circle():
    idm = Matrix.identity(3, 1)
    x = Polyvector.term(2, (0, 1, 0), (0, 2), 1)
    y = Polyvector.term(1, (1, 0, 1), (1,), 1)
    assert chain_circle_avatar(x, idm, y, idm) == circle_product(x, y)


def test_chain_circle_component_degree_mismatch_is_zero_padding():
    g, h, x, y = worked_example_small()
    # wrong-degree basis elements simply pair to zero
    assert chain_circle_component(x, g, y, h, (0, 1)).is_zero()


@st.composite
def reduced_pair(draw):
    """Random (x, g, y, h) with y reduced for h, on k^3 with sign actions."""
    order = 1
    n = 3
    moved_h = draw(st.sampled_from([frozenset(), frozenset({0}), frozenset({1, 2})]))
    moved_g = draw(st.sampled_from([frozenset(), frozenset({2}), frozenset({0, 1})]))

    def sign_mat(moved):
        return mat(order, [[(-1 if i in moved else 1) if i == j else 0 for j in range(n)] for i in range(n)])

    gmat, hmat = sign_mat(moved_g), sign_mat(moved_h)
    fixed_h = [i for i in range(n) if i not in moved_h]
    dy = draw(st.integers(len(moved_h), min(n, len(moved_h) + 1)))
    extra = draw(st.sampled_from(list(combinations(fixed_h, dy - len(moved_h)))))
    wedge = tuple(sorted(set(extra) | moved_h))
    exps = [0] * n
    for _ in range(draw(st.integers(0, 2))):
        if fixed_h:
            exps[draw(st.sampled_from(fixed_h))] += 1
    y = Polyvector.term(draw(st.integers(1, 3)), tuple(exps), wedge, order)
    dx = draw(st.integers(1, 2))
    xw = draw(st.sampled_from(list(combinations(range(n), dx))))
    xe = draw(st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 1)))
    x = Polyvector.term(draw(st.integers(-3, 3)), xe, xw, order)
    return x, gmat, y, hmat


@given(reduced_pair())
@settings(max_examples=30, deadline=None)
def test_chain_matches_closed_on_reduced_inputs(data):
    x, gmat, y, hmat = data
    if x.is_zero() or y.is_zero():
        return
    assert chain_circle_avatar(x, gmat, y, hmat) == circle_product(x, y, gmat)
