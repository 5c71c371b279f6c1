"""Acceptance suite: one test per shipped guarantee, exact arithmetic
throughout, zero tolerance.  Each test prints a single pass line; any
deviation fails the corresponding assertion instead."""

import random
import time
from math import comb

from skewbrack.scalars import Cyc
from skewbrack.polyvec import Polyvector
from skewbrack.groups import enumerate_group, geometry, resolve_word
from skewbrack.cochain import (
    cohomology_basis,
    cohomology_dim_direct,
    is_cocycle,
    is_invariant,
    is_reduced,
    reynolds,
)
from skewbrack.bracket import gerstenhaber, perp_vanishing_applies
from skewbrack.koszul import (
    appendix_suite,
    chain_bracket_cochain,
    homotopy_sweep,
    schouten_graded_laws,
    schouten_random_check,
)
from skewbrack.fixtures import (
    fixture_groups,
    klein_bracket_pair,
    klein_signs_k3,
    minimal_pair_k5,
    overlap_bracket_pair,
    overlap_signs_k3,
    plane_rotation_pair_k5,
    rotation_bracket_pair,
    sign_group_k1,
    sign_line_k2,
    neg_identity_k2,
    swap_group_k2,
)
from skewbrack.linalg import Matrix


def trivial_group_k(n):
    rows = [[Cyc.one(1) if i == j else Cyc.zero(1) for j in range(n)]
            for i in range(n)]
    return enumerate_group([Matrix(1, rows)])


def test_criterion_01_appendix_identity_sweep():
    start = time.monotonic()
    entries = appendix_suite(6, 6, 6)
    elapsed = time.monotonic() - start
    names = {e["identity"] for e in entries}
    assert len(names) == 17
    failures = [e for e in entries if not e["pass"]]
    assert failures == []
    assert elapsed < 10.0
    print(f"criterion 1: PASS - 17/17 coefficient identities on "
          f"{len(entries)} tuples (s,t,z <= 6) in {elapsed:.2f}s")


def test_criterion_02_homotopy_residual_exhaustive():
    start = time.monotonic()
    checked, failures = homotopy_sweep(3, 2, 2, 3)
    elapsed = time.monotonic() - start
    assert checked >= 980
    assert failures == []
    assert elapsed < 60.0
    print(f"criterion 2: PASS - homotopy residual zero on {checked} basis "
          f"inputs (dim 3, s,z <= 2, t <= 3, repeats included) in "
          f"{elapsed:.2f}s")


def test_criterion_03_schouten_agreement_and_graded_laws():
    checked_r, fail_r = schouten_random_check(50, seed=0)
    assert checked_r == 50 and fail_r == []
    total = 0
    for n in (1, 2, 3):
        checked_l, fail_l = schouten_graded_laws(n, max_poly=2, max_ext=2)
        assert fail_l == []
        total += checked_l
    print(f"criterion 3: PASS - chain bracket equals the derivation "
          f"commutator on 50 random pairs; antisymmetry and jacobi hold "
          f"on {total} basis tuples (dim <= 3)")


def test_criterion_04_sign_pair_worked_example():
    group, x, y, expected = klein_bracket_pair()
    chain = chain_bracket_cochain(x, y)
    assert chain == expected
    gh = resolve_word(group, "g1*g2")
    omega = geometry(group, gh).omega
    d2 = Polyvector.term(1, (0, 0, 0), (1,), 1)
    assert chain.component(gh) == omega.wedge(d2)
    assert reynolds(x).is_zero()
    assert reynolds(y).is_zero()
    print("criterion 4: PASS - chain bracket of the k^3 sign pair is "
          "omega_gh ^ d2 at g1*g2 and both classes average to zero")


def test_criterion_05_plane_pair_worked_examples():
    for orders in ((2, 2), (3, 2)):
        group, x, y, expected = rotation_bracket_pair(*orders)
        report = gerstenhaber(x, y)
        assert report.result == expected
        assert not report.result.is_zero()
        assert report.result.degree == 4
        s, t = resolve_word(group, "g1"), resolve_word(group, "g2")
        assert not perp_vanishing_applies(group, s, t)
    print("criterion 5: PASS - both plane-pair brackets equal the product "
          "volume class in degree 4 and the perp criterion does not apply")


def test_criterion_06_degree_one_pieces_vanish():
    cases = {
        "signs on k^3": klein_signs_k3(),
        "sign on k^1": sign_group_k1(),
        "sign line on k^2": sign_line_k2(),
        "minus identity on k^2": neg_identity_k2(),
        "swap on k^2": swap_group_k2(),
    }
    checked = 0
    for name, group in cases.items():
        for p in range(group.dim + 1):
            for m in range(4):
                for c in cohomology_basis(group, p, m):
                    checked += 1
                    for g in c.support():
                        assert geometry(group, g).codim != 1, (name, p, m)
    assert checked > 0
    print(f"criterion 6: PASS - no cohomology class meets codimension one "
          f"on {len(cases)} reflection-free fixtures ({checked} classes, "
          f"m <= 3)")


def test_criterion_07_codimension_grading_random_pairs():
    rng = random.Random(11)
    pairs = nonzero = 0
    for name, group in fixture_groups().items():
        pool = []
        p_cap = 2 if group.dim > 3 else group.dim
        m_cap = 1 if group.dim > 3 else 2
        for p in range(1, p_cap + 1):
            for m in range(m_cap + 1):
                pool.extend(cohomology_basis(group, p, m))
        if not pool:
            continue
        for _ in range(6):
            x, y = rng.choice(pool), rng.choice(pool)
            i = max(geometry(group, g).codim for g in x.support())
            j = max(geometry(group, g).codim for g in y.support())
            report = gerstenhaber(x, y)
            pairs += 1
            assert report.result.degree == x.degree + y.degree - 1
            if report.result.is_zero():
                continue
            nonzero += 1
            for k in report.result.support():
                assert geometry(group, k).codim == i + j, name
    assert pairs >= 20
    print(f"criterion 7: PASS - {pairs} random invariant reduced pairs; "
          f"all {nonzero} nonzero brackets land in D(i+j) with degree "
          f"|x|+|y|-1")


def test_criterion_08_minimal_degree_vanishing():
    found = 0
    for name, group in fixture_groups().items():
        minimal = []
        for p in range(1, min(group.dim, 3) + 1):
            for m in range(3):
                for c in cohomology_basis(group, p, m):
                    support = c.support()
                    if any(g in group.kernel_indices for g in support):
                        continue
                    if all(geometry(group, g).codim == p for g in support):
                        minimal.append(c)
        found += len(minimal)
        for x in minimal:
            for y in minimal:
                assert gerstenhaber(x, y).result.is_zero(), name
    group, x, y = minimal_pair_k5()
    assert gerstenhaber(x, y).result.is_zero()
    assert found > 0
    print(f"criterion 8: PASS - {found} minimal classes (exterior part "
          f"exactly the moved volume form) found off-kernel; every mutual "
          f"bracket is exactly zero")


def test_criterion_09_dimension_cross_check():
    start = time.monotonic()
    total = 0
    for name, group in fixture_groups().items():
        for p in range(min(group.dim, 3) + 1):
            for m in range(4):
                basis = cohomology_basis(group, p, m)
                direct = cohomology_dim_direct(group, p, m)
                assert len(basis) == direct, (name, p, m)
                total += len(basis)
    for n in (1, 2, 3):
        group = trivial_group_k(n)
        for p in range(min(n, 3) + 1):
            for m in range(4):
                want = comb(m + n - 1, n - 1) * comb(n, p)
                assert len(cohomology_basis(group, p, m)) == want
                assert cohomology_dim_direct(group, p, m) == want
    elapsed = time.monotonic() - start
    assert elapsed < 120.0
    print(f"criterion 9: PASS - basis size equals the direct dimension on "
          f"every fixture group (p <= 3, m <= 3, {total} classes) and the "
          f"trivial-group counts match, in {elapsed:.1f}s")


def test_criterion_10_perp_vanishing_fixture():
    group, x, y = overlap_bracket_pair()
    g, h = resolve_word(group, "g1"), resolve_word(group, "g2")
    assert perp_vanishing_applies(group, g, h)
    pool_g, pool_h = [], []
    for p in range(1, 4):
        for m in range(3):
            for c in cohomology_basis(group, p, m):
                support = set(c.support())
                if support == {g}:
                    pool_g.append(c)
                elif support == {h}:
                    pool_h.append(c)
    assert x in pool_g or any(c == x for c in pool_g)
    checked = 0
    for cx in pool_g:
        for cy in pool_h:
            assert gerstenhaber(cx, cy).result.is_zero()
            assert gerstenhaber(cy, cx).result.is_zero()
            checked += 2
    assert checked > 0
    print(f"criterion 10: PASS - overlapping moved subspaces are G-stable "
          f"and all {checked} cross-class brackets vanish exactly")
