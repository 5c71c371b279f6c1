"""Chain-level oracle on the Koszul resolution of the polynomial ring.

Everything here evaluates circle products by explicit contraction
through the resolution: comultiply the basis element, evaluate the
inner cochain on the middle leg, twist the right leg, straighten the
resulting two-sided element with the contraction map phi, and evaluate
the outer cochain.  No closed formula is used, so these routines serve
as an independent check of the fast path in polyvec and bracket.

Conventions:
  * o(v_1, ..., v_k) is the signed sum over permutations of tensor
    words, normalized so o of an increasing index tuple is a basis
    element of the degree-k resolution term.
  * Resolution terms are stored as dicts keyed by
    (wedge indices, left exponent tuple, right exponent tuple); the
    two-sided tensor square adds a middle exponent tuple and a second
    wedge block.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, factorial

from .linalg import Matrix
from .scalars import Cyc
from .polyvec import (
    Poly,
    Polyvector,
    circle_product,
    minor_det,
    rev_sign,
    schouten,
    sort_sign,
    sub_multisets,
    subst_matrix,
)


def xi(s, t, z, r):
    """The contraction coefficient (r+z-1)!(t-r+s)! / ((r-1)!(t-r)!(s+t+z)!)."""
    assert t >= 1 and 1 <= r <= t and s >= 0 and z >= 0
    return Fraction(
        factorial(r + z - 1) * factorial(t - r + s),
        factorial(r - 1) * factorial(t - r) * factorial(s + t + z),
    )


def c_coeff(s, t, z, r):
    """Signed contraction coefficient (-1)^(sz+z) xi(s,t,z,r)."""
    sign = -1 if (s * z + z) % 2 else 1
    return sign * xi(s, t, z, r)


def zeta(l, d, t, r, m):
    """Collapsed per-permutation weight in the closed circle formula:
    (-1)^((m-1)(l+d)) / t!, independent of r.  The splitting sum over
    the straightening map telescopes to the 1/t! magnitude, and the
    sign follows the reversed-word pairing normalization; see the
    oracle agreement tests."""
    assert 1 <= l <= d and t >= 1 and 1 <= r <= t
    sign = -1 if ((m - 1) * (l + d)) % 2 else 1
    return Fraction(sign, factorial(t))


def _zero_exp(n):
    return (0,) * n


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class KoszulElt:
    """Sum of terms  x^eL (tensor) o(x_I) (tensor) x^eR  with Cyc coefficients."""

    __slots__ = ("n", "order", "terms")

    def __init__(self, n, order, terms=None):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "order", order)
        clean = {}
        for key, c in (terms or {}).items():
            c = Cyc.of(c, order)
            if not c.is_zero():
                clean[key] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("KoszulElt is immutable")

    @staticmethod
    def zero(n, order):
        return KoszulElt(n, order, {})

    @staticmethod
    def basis(n, order, idx):
        """1 (tensor) o(x_idx) (tensor) 1, idx need not be sorted."""
        sgn, key = sort_sign(idx)
        if sgn == 0:
            return KoszulElt.zero(n, order)
        return KoszulElt(n, order, {(key, _zero_exp(n), _zero_exp(n)): Cyc.of(sgn, order)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, KoszulElt)
            and self.n == other.n
            and self.order == other.order
            and self.terms == other.terms
        )

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return KoszulElt(self.n, self.order, out)

    def __neg__(self):
        return KoszulElt(self.n, self.order, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Cyc.of(c, self.order)
        return KoszulElt(self.n, self.order, {k: v * c for k, v in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "KoszulElt(0)"
        bits = []
        for (idx, el, er), c in sorted(self.terms.items()):
            bits.append(f"{c}*[x^{el} o{tuple(i + 1 for i in idx)} x^{er}]")
        return " + ".join(bits)


class KoszulTensor2:
    """Sum of terms  x^eL (tensor) o(x_S) (tensor) x^eM (tensor) o(x_Z)
    (tensor) x^eR  over the polynomial ring: the tensor square of the
    resolution with its middle legs multiplied together."""

    __slots__ = ("n", "order", "terms")

    def __init__(self, n, order, terms=None):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "order", order)
        clean = {}
        for key, c in (terms or {}).items():
            c = Cyc.of(c, order)
            if not c.is_zero():
                clean[key] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("KoszulTensor2 is immutable")

    @staticmethod
    def zero(n, order):
        return KoszulTensor2(n, order, {})

    @staticmethod
    def term(n, order, s_idx, z_idx, el, em, er, coeff=1):
        sgn1, key1 = sort_sign(s_idx)
        if sgn1 == 0:
            return KoszulTensor2.zero(n, order)
        sgn2, key2 = sort_sign(z_idx)
        if sgn2 == 0:
            return KoszulTensor2.zero(n, order)
        c = Cyc.of(coeff, order) * (sgn1 * sgn2)
        return KoszulTensor2(n, order, {(key1, key2, tuple(el), tuple(em), tuple(er)): c})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, KoszulTensor2)
            and self.n == other.n
            and self.order == other.order
            and self.terms == other.terms
        )

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return KoszulTensor2(self.n, self.order, out)

    def __neg__(self):
        return KoszulTensor2(self.n, self.order, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Cyc.of(c, self.order)
        return KoszulTensor2(self.n, self.order, {k: v * c for k, v in self.terms.items()})


def koszul_diff(e: KoszulElt) -> KoszulElt:
    """Differential of the resolution: d(a o(I) b) contracts one wedge
    index at a time into the left or right polynomial leg with
    alternating signs."""
    n, order = e.n, e.order
    out = {}
    for (idx, el, er), c in e.terms.items():
        for j, i in enumerate(idx):
            rest = idx[:j] + idx[j + 1:]
            sgn = -1 if j % 2 else 1
            ei = tuple(1 if k == i else 0 for k in range(n))
            k1 = (rest, _add_exp(el, ei), er)
            k2 = (rest, el, _add_exp(er, ei))
            cc = c * sgn
            out[k1] = out.get(k1, Cyc.zero(order)) + cc
            out[k2] = out.get(k2, Cyc.zero(order)) - cc
    return KoszulElt(n, order, out)


def koszul2_diff(e: KoszulTensor2) -> KoszulTensor2:
    """Total differential on the tensor square: the resolution
    differential on the first factor plus, with the sign of the first
    wedge degree, the differential on the second factor.  Contractions
    hitting the shared middle leg multiply into the middle exponent."""
    n, order = e.n, e.order
    out = {}

    def put(key, c):
        out[key] = out.get(key, Cyc.zero(order)) + c

    for (s_idx, z_idx, el, em, er), c in e.terms.items():
        s = len(s_idx)
        for j, i in enumerate(s_idx):
            rest = s_idx[:j] + s_idx[j + 1:]
            sgn = -1 if j % 2 else 1
            ei = tuple(1 if k == i else 0 for k in range(n))
            put((rest, z_idx, _add_exp(el, ei), em, er), c * sgn)
            put((rest, z_idx, el, _add_exp(em, ei), er), c * (-sgn))
        outer = -1 if s % 2 else 1
        for j, i in enumerate(z_idx):
            rest = z_idx[:j] + z_idx[j + 1:]
            sgn = outer * (-1 if j % 2 else 1)
            ei = tuple(1 if k == i else 0 for k in range(n))
            put((s_idx, rest, el, _add_exp(em, ei), er), c * sgn)
            put((s_idx, rest, el, em, _add_exp(er, ei)), c * (-sgn))
    return KoszulTensor2(n, order, out)


def f_k(e: KoszulTensor2) -> KoszulElt:
    """Chain map from the tensor square back to the resolution: multiply
    out whichever factor has wedge degree zero (left factor positively,
    right factor negatively)."""
    n, order = e.n, e.order
    out = {}

    def put(key, c):
        out[key] = out.get(key, Cyc.zero(order)) + c

    for (s_idx, z_idx, el, em, er), c in e.terms.items():
        if not s_idx:
            put((z_idx, _add_exp(el, em), er), c)
        if not z_idx:
            put((s_idx, el, _add_exp(em, er)), -c)
    return KoszulElt(n, order, out)


def _split_sign(idx, part1, part2):
    """Sign of the permutation rearranging the increasing tuple idx into
    the concatenation (part1, part2), both blocks increasing."""
    pos = {v: k for k, v in enumerate(idx)}
    perm = [pos[v] for v in part1 + part2]
    sgn, _ = sort_sign(perm)
    return sgn


def diagonal(e: KoszulElt) -> KoszulTensor2:
    """Comultiplication: split the wedge block into an ordered pair of
    complementary subsets with shuffle signs; outer legs stay put."""
    n, order = e.n, e.order
    out = {}

    def put(key, c):
        out[key] = out.get(key, Cyc.zero(order)) + c

    zero = _zero_exp(n)
    for (idx, el, er), c in e.terms.items():
        k = len(idx)
        for sz in range(k + 1):
            for part1 in combinations(idx, sz):
                part2 = tuple(v for v in idx if v not in part1)
                sgn = _split_sign(idx, part1, part2)
                put((part1, part2, el, zero, er), c * sgn)
    return KoszulTensor2(n, order, out)


def triple_splits(idx):
    """Ordered splittings of an increasing index tuple into three blocks,
    with the sign rearranging idx into their concatenation.  Agrees with
    applying the comultiplication twice."""
    k = len(idx)
    for s1 in range(k + 1):
        for part1 in combinations(idx, s1):
            rest1 = tuple(v for v in idx if v not in part1)
            for s2 in range(len(rest1) + 1):
                for part2 in combinations(rest1, s2):
                    part3 = tuple(v for v in rest1 if v not in part2)
                    pos = {v: j for j, v in enumerate(idx)}
                    perm = [pos[v] for v in part1 + part2 + part3]
                    sgn, _ = sort_sign(perm)
                    yield part1, part2, part3, sgn


def phi(e: KoszulTensor2) -> KoszulElt:
    """Contracting homotopy straightening the tensor square into the
    resolution.  On a term with wedge blocks U (left factor) and W
    (right factor) and middle monomial x^alpha, each middle variable
    x_i is absorbed into the wedge as o(W, i, U) while the remaining
    middle factors split around it; the permutation sum collapses to
    multiset weights c_coeff(s,t,z,r) (r-1)! (t-r)! alpha_i
    C(beta, L)."""
    n, order = e.n, e.order
    out = {}

    def put(key, c):
        out[key] = out.get(key, Cyc.zero(order)) + c

    for (s_idx, z_idx, el, em, er), c in e.terms.items():
        s, z, t = len(s_idx), len(z_idx), sum(em)
        if t == 0:
            continue
        for i in range(n):
            a_i = em[i]
            if a_i == 0:
                continue
            wsgn, wkey = sort_sign(z_idx + (i,) + s_idx)
            if wsgn == 0:
                continue
            beta = list(em)
            beta[i] -= 1
            for lpart in sub_multisets(beta):
                r = sum(lpart) + 1
                weight = (
                    c_coeff(s, t, z, r)
                    * (factorial(r - 1) * factorial(t - r))
                    * a_i
                    * _prod_comb(beta, lpart)
                )
                rest = tuple(b - l for b, l in zip(beta, lpart))
                key = (wkey, _add_exp(el, lpart), _add_exp(er, rest))
                put(key, c * (weight * wsgn))
    return KoszulElt(n, order, out)


def _prod_comb(beta, lpart):
    out = 1
    for b, l in zip(beta, lpart):
        out *= comb(b, l)
    return out


def homotopy_residual(e: KoszulTensor2) -> KoszulElt:
    """d phi(e) + phi(d e) - F(e); identically zero when phi is a
    contracting homotopy for the multiplication chain map."""
    return koszul_diff(phi(e)) + phi(koszul2_diff(e)) - f_k(e)


def act_koszul(e: KoszulElt, m: Matrix) -> KoszulElt:
    """Linear substitution x_i -> sum_k m[k][i] x_k on both outer legs
    and on the wedge block (through minors of m)."""
    n, order = e.n, e.order
    out = {}

    def put(key, c):
        out[key] = out.get(key, Cyc.zero(order)) + c

    for (idx, el, er), c in e.terms.items():
        pl = subst_matrix(Poly.monomial(el, 1, order), m)
        pr = subst_matrix(Poly.monomial(er, 1, order), m)
        k = len(idx)
        for rows in combinations(range(n), k):
            d = minor_det(m, rows, idx)
            if d.is_zero():
                continue
            for e1, c1 in pl.terms.items():
                for e2, c2 in pr.terms.items():
                    put((rows, e1, e2), c * d * c1 * c2)
    return KoszulElt(n, order, out)


def act_koszul2(e: KoszulTensor2, m: Matrix) -> KoszulTensor2:
    """Same substitution action on the tensor square (three polynomial
    legs, two wedge blocks)."""
    n, order = e.n, e.order
    out = {}

    def put(key, c):
        out[key] = out.get(key, Cyc.zero(order)) + c

    for (s_idx, z_idx, el, em, er), c in e.terms.items():
        pl = subst_matrix(Poly.monomial(el, 1, order), m)
        pm = subst_matrix(Poly.monomial(em, 1, order), m)
        pr = subst_matrix(Poly.monomial(er, 1, order), m)
        for rows_s in combinations(range(n), len(s_idx)):
            ds = minor_det(m, rows_s, s_idx)
            if ds.is_zero():
                continue
            for rows_z in combinations(range(n), len(z_idx)):
                dz = minor_det(m, rows_z, z_idx)
                if dz.is_zero():
                    continue
                for e1, c1 in pl.terms.items():
                    for e2, c2 in pm.terms.items():
                        for e3, c3 in pr.terms.items():
                            put((rows_s, rows_z, e1, e2, e3), c * ds * dz * c1 * c2 * c3)
    return KoszulTensor2(n, order, out)


def chain_circle_component(
    x: Polyvector,
    gmat: Matrix,
    y: Polyvector,
    hmat: Matrix,
    idx,
) -> Poly:
    """Value of (x tagged gmat) circle (y tagged hmat) on the resolution
    basis element o(x_idx), as the polynomial sitting left of the
    product group tag.

    The contraction: comultiply o(x_idx) into Sweedler triples, evaluate
    y on the middle block (a Koszul sign (-1)^(|w1| |y|) moves y past the
    first block), twist the third block by hmat, straighten with phi,
    then evaluate x on the result with its right leg twisted by gmat."""
    n, order = x.n, x.order
    idx = tuple(idx)
    value = Poly.zero(n, order)
    for part1, part2, part3, eps in triple_splits(idx):
        q = y.pair(part2)
        if q.is_zero():
            continue
        m_deg = len(part2)
        ksign = -1 if (len(part1) * m_deg) % 2 else 1
        for rows in combinations(range(n), len(part3)):
            d = minor_det(hmat, rows, part3)
            if d.is_zero():
                continue
            t2 = {}
            for em, qc in q.terms.items():
                key = (part1, rows, _zero_exp(n), em, _zero_exp(n))
                t2[key] = qc * (eps * ksign) * d
            straightened = phi(KoszulTensor2(n, order, t2))
            for (widx, el, er), c in straightened.terms.items():
                inner = x.pair(widx)
                if inner.is_zero():
                    continue
                left = Poly.monomial(el, c, order)
                right = subst_matrix(Poly.monomial(er, 1, order), gmat)
                value = value + left * inner * right
    return value


def chain_circle_avatar(
    x: Polyvector, gmat: Matrix, y: Polyvector, hmat: Matrix
) -> Polyvector:
    """Polyvector avatar of the chain-level circle product: evaluate on
    every basis wedge of the correct degree and re-express in the d_I
    basis (the reversed-word pairing sign enters once per component)."""
    n, order = x.n, x.order
    deg = x.degree() + y.degree() - 1
    comps = {}
    if deg < 0:
        return Polyvector.zero(n, order)
    rs = rev_sign(deg)
    for idx in combinations(range(n), deg):
        v = chain_circle_component(x, gmat, y, hmat, idx)
        if not v.is_zero():
            comps[idx] = v * rs
    return Polyvector(n, order, comps)


def chain_bracket_avatar(
    x: Polyvector, gmat: Matrix, y: Polyvector, hmat: Matrix
) -> Polyvector:
    """Graded commutator of chain-level circle products (both tagged
    products land on the same group element when the tags commute;
    callers handle the general bookkeeping)."""
    first = chain_circle_avatar(x, gmat, y, hmat)
    second = chain_circle_avatar(y, hmat, x, gmat)
    sign = -1 if ((x.degree() - 1) * (y.degree() - 1)) % 2 else 1
    return first - second * sign


def appendix_suite(max_s=6, max_t=6, max_z=6, only=None):
    """Exact sweep of the seventeen coefficient identities behind phi.

    Returns a list of {identity, tuple, lhs, rhs, pass} entries, one per
    checked instance, covering every valid (s, t, z, r) in the bounds.
    Identities whose statement needs s >= 1 or z >= 1 start there; terms
    whose scalar factor is zero are dropped before evaluating xi.  Pass
    ``only`` (a set of identity names) to restrict the sweep.
    """
    entries = []

    def check(name, tup, lhs, rhs):
        if only is not None and name not in only:
            return
        entries.append({
            "identity": name,
            "tuple": tup,
            "lhs": lhs,
            "rhs": rhs,
            "pass": lhs == rhs,
        })

    zero = Fraction(0)
    for s in range(1, max_s + 1):
        for t in range(1, max_t + 1):
            check("lEQ1", (s, t, 0, t),
                  xi(s, t, 0, t) - s * xi(s - 1, t + 1, 0, t + 1), zero)
            check("lEQ2", (s, t, 0, 1),
                  xi(s, t, 0, 1) + s * xi(s - 1, t + 1, 0, 1),
                  Fraction(1, factorial(t)))
            for r in range(1, t + 1):
                check("lEQ3", (s, t, 0, r), xi(s, t, 0, r),
                      xi(s - 1, t, 0, r) - r * xi(s - 1, t + 1, 0, r + 1))
                check("lEQ4", (s, t, 0, r), xi(s, t, 0, r),
                      (t - r + 1) * xi(s - 1, t + 1, 0, r))
            for r in range(1, t):
                check("lEQ5", (s, t, 0, r),
                      xi(s, t, 0, r) - xi(s, t, 0, r + 1),
                      s * xi(s - 1, t + 1, 0, r + 1))
    for z in range(1, max_z + 1):
        for t in range(1, max_t + 1):
            check("rEQ1", (0, t, z, t),
                  xi(0, t, z, t) + z * xi(0, t + 1, z - 1, t + 1),
                  Fraction(1, factorial(t)))
            check("rEQ2", (0, t, z, 1),
                  xi(0, t, z, 1) - z * xi(0, t + 1, z - 1, 1), zero)
            for r in range(1, t + 1):
                check("rEQ3", (0, t, z, r),
                      r * xi(0, t + 1, z - 1, r + 1), xi(0, t, z, r))
                check("rEQ4", (0, t, z, r),
                      xi(0, t, z - 1, r) - (t - r + 1) * xi(0, t + 1, z - 1, r),
                      xi(0, t, z, r))
            for r in range(2, t + 1):
                check("rEQ5", (0, t, z, r),
                      xi(0, t, z, r - 1) - xi(0, t, z, r),
                      -z * xi(0, t + 1, z - 1, r))
    for s in range(1, max_s + 1):
        for z in range(0, max_z + 1):
            for t in range(1, max_t + 1):
                for r in range(1, t + 1):
                    check("lrEQ1", (s, t, z, r),
                          xi(s, t, z, r) + r * xi(s - 1, t + 1, z, r + 1)
                          - xi(s - 1, t, z, r), zero)
                    check("lrEQ2", (s, t, z, r),
                          (t - r + 1) * xi(s - 1, t + 1, z, r) - xi(s, t, z, r),
                          zero)
                lhs6 = -s * xi(s - 1, t + 1, z, t + 1) + xi(s, t, z, t)
                if z:
                    lhs6 += z * xi(s, t + 1, z - 1, t + 1)
                check("lrEQ6", (s, t, z, t), lhs6, zero)
    for s in range(0, max_s + 1):
        for z in range(1, max_z + 1):
            for t in range(1, max_t + 1):
                for r in range(1, t + 1):
                    check("lrEQ3", (s, t, z, r),
                          r * xi(s, t + 1, z - 1, r + 1), xi(s, t, z, r))
                    check("lrEQ4", (s, t, z, r),
                          xi(s, t, z, r) + (t - r + 1) * xi(s, t + 1, z - 1, r),
                          xi(s, t, z - 1, r))
                lhs7 = z * xi(s, t + 1, z - 1, 1) - xi(s, t, z, 1)
                if s:
                    lhs7 -= s * xi(s - 1, t + 1, z, 1)
                check("lrEQ7", (s, t, z, 1), lhs7, zero)
    for s in range(0, max_s + 1):
        for z in range(0, max_z + 1):
            for t in range(2, max_t + 1):
                for r in range(1, t):
                    lhs5 = xi(s, t, z, r) - xi(s, t, z, r + 1)
                    if z:
                        lhs5 += z * xi(s, t + 1, z - 1, r + 1)
                    if s:
                        lhs5 -= s * xi(s - 1, t + 1, z, r + 1)
                    check("lrEQ5", (s, t, z, r), lhs5, zero)
    return entries


def homotopy_sweep(n, max_s, max_z, max_t, order=1):
    """Evaluate the homotopy residual on every basis element of the
    tensor square with |S| <= max_s, |Z| <= max_z, middle degree <= max_t.

    Returns (checked, failures) where failures lists offending
    (S, Z, middle exponent) keys; an empty list is the expected outcome.
    """
    from .cochain import monomials

    checked, failures = 0, []
    idx_lists = [c for k in range(n + 1) for c in combinations(range(n), k)]
    zero = (0,) * n
    for s_idx in idx_lists:
        if len(s_idx) > max_s:
            continue
        for z_idx in idx_lists:
            if len(z_idx) > max_z:
                continue
            for t in range(max_t + 1):
                for em in monomials(n, t):
                    e = KoszulTensor2.term(n, order, s_idx, z_idx, zero, em, zero)
                    if e.is_zero():
                        continue
                    checked += 1
                    if not homotopy_residual(e).is_zero():
                        failures.append((s_idx, z_idx, em))
    return checked, failures


def phi_circle_chain(f, g, e: KoszulElt):
    """Chain-level circle product of two cochains, evaluated on an
    element of the resolution.

    Returns the value in the skew group algebra as a map from group
    index to polynomial.  Every wedge block of e must have the degree
    of the composite, |f| + |g| - 1.
    """
    if f.group is not g.group:
        raise ValueError("cochains live over different groups")
    group = f.group
    n, order = group.dim, group.scalar_order
    want = f.degree + g.degree - 1
    out = {}
    for (idx, el, er), c in e.terms.items():
        if len(idx) != want:
            raise ValueError("resolution degree does not match the composite degree")
        for a, xg in f.comps.items():
            amat = group.matrix(a)
            for b, yh in g.comps.items():
                base = chain_circle_component(xg, amat, yh, group.matrix(b), idx)
                if base.is_zero():
                    continue
                k = group.mult(a, b)
                left = Poly.monomial(el, c, order)
                right = subst_matrix(Poly.monomial(er, 1, order), group.matrix(k))
                v = left * base * right
                out[k] = out[k] + v if k in out else v
    return {k: p for k, p in out.items() if not p.is_zero()}


def chain_bracket_cochain(x, y):
    """Graded commutator of chain-level circle products, assembled into
    a cochain through the basis pairing."""
    from .cochain import Cochain

    if x.group is not y.group:
        raise ValueError("cochains live over different groups")
    group = x.group
    sign = -1 if ((x.degree - 1) * (y.degree - 1)) % 2 else 1
    out = {}

    def add(k, pv):
        if pv.is_zero():
            return
        out[k] = out[k] + pv if k in out else pv

    for a, xg in x.comps.items():
        for b, yh in y.comps.items():
            add(group.mult(a, b),
                chain_circle_avatar(xg, group.matrix(a), yh, group.matrix(b)))
            add(group.mult(b, a),
                chain_circle_avatar(yh, group.matrix(b), xg, group.matrix(a)) * (-sign))
    return Cochain(group, x.degree + y.degree - 1, out)


def circle_closed(x, y):
    """Closed-formula circle product of two cochains.

    The right operand must be in reduced form componentwise (wedge part
    divisible by the volume form of its element, polynomial part free of
    moved variables); outside that subspace the closed formula and the
    chain-level product genuinely disagree, so the input is refused.
    """
    from .cochain import Cochain, is_reduced

    if x.group is not y.group:
        raise ValueError("cochains live over different groups")
    if not is_reduced(y):
        raise ValueError("right operand is not in reduced form (apply project first)")
    group = x.group
    out = {}
    for a, xg in x.comps.items():
        amat = group.matrix(a)
        for b, yh in y.comps.items():
            term = circle_product(xg, yh, amat)
            if term.is_zero():
                continue
            k = group.mult(a, b)
            out[k] = out[k] + term if k in out else term
    return Cochain(group, x.degree + y.degree - 1, out)


def vector_field_commutator(x: Polyvector, y: Polyvector) -> Polyvector:
    """Commutator of two vector fields computed directly as derivations,
    with no reference to the circle product: [x, y](x_j) = x(y_j) - y(x_j).
    """
    for pv in (x, y):
        if any(len(idx) != 1 for idx in pv.comps):
            raise ValueError("inputs must be vector fields (degree one)")
    n, order = x.n, x.order
    zero = Poly.zero(n, order)
    comps = {}
    for j in range(n):
        acc = zero
        fj = x.comps.get((j,), zero)
        gj = y.comps.get((j,), zero)
        for i in range(n):
            fi = x.comps.get((i,))
            gi = y.comps.get((i,))
            if fi is not None:
                acc = acc + fi * gj.deriv(i)
            if gi is not None:
                acc = acc - gi * fj.deriv(i)
        if not acc.is_zero():
            comps[(j,)] = acc
    return Polyvector(n, order, comps)


def schouten_random_check(count=50, seed=0, n=3, max_exp=2):
    """Compare the chain-level bracket against the derivation commutator
    on random pairs of vector fields over the trivial group.

    Returns (checked, failures); the two computations share nothing, so
    agreement pins down both sign conventions at degree (1, 1).
    """
    import random

    rng = random.Random(seed)
    ident = Matrix.identity(n, 1)

    def random_field():
        out = Polyvector.zero(n, 1)
        for _ in range(3):
            exps = tuple(rng.randrange(max_exp + 1) for _ in range(n))
            out = out + Polyvector.term(rng.randrange(-2, 3), exps,
                                        (rng.randrange(n),), 1)
        return out

    failures = []
    for k in range(count):
        x, y = random_field(), random_field()
        if x.is_zero() or y.is_zero():
            continue
        got = chain_bracket_avatar(x, ident, y, ident)
        want = vector_field_commutator(x, y)
        if got != want:
            failures.append(k)
    return count, failures


def schouten_graded_laws(n, max_poly=2, max_ext=2):
    """Graded antisymmetry on every ordered pair and the graded Jacobi
    identity on every unordered triple of basis polyvectors with the
    given polynomial/exterior degree bounds.

    Returns (checked, failures).  Antisymmetry on all ordered pairs plus
    Jacobi on one representative of each triple implies the law for
    every ordering.
    """
    from .cochain import monomials

    basis = []
    for p in range(min(n, max_ext) + 1):
        for idx in combinations(range(n), p):
            for d in range(max_poly + 1):
                for exps in monomials(n, d):
                    basis.append((Polyvector.term(1, exps, idx, 1), p))

    checked, failures = 0, []

    def sgn(u, v):
        return -1 if (u * v) % 2 else 1

    for (x, px), (y, py) in combinations_with_replacement(basis, 2):
        checked += 1
        if schouten(x, y) != schouten(y, x) * (-sgn(px - 1, py - 1)):
            failures.append(("antisymmetry", str(x), str(y)))

    cache = {}

    def br(i, j):
        if (i, j) not in cache:
            cache[(i, j)] = schouten(basis[i][0], basis[j][0])
        return cache[(i, j)]

    m = len(basis)
    for i, j, k in combinations_with_replacement(range(m), 3):
        a, b, c = basis[i][1] - 1, basis[j][1] - 1, basis[k][1] - 1
        total = (schouten(basis[i][0], br(j, k)) * sgn(a, c)
                 + schouten(basis[j][0], br(k, i)) * sgn(b, a)
                 + schouten(basis[k][0], br(i, j)) * sgn(c, b))
        checked += 1
        if not total.is_zero():
            failures.append(("jacobi", str(basis[i][0]), str(basis[j][0]),
                             str(basis[k][0])))
    return checked, failures
