"""Sparse polynomials and polyvector fields with exact scalars.

A polyvector is a sum of terms  p * d_{i_1} ^ ... ^ d_{i_k}  with p a
polynomial and the d_i dual basis directions; it is stored as a map
from strictly increasing index tuples to polynomial coefficients.
These are the reduced representatives of Hochschild cohomology
components, and the closed bracket formula lives here.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iter_product
from math import comb, factorial

from .linalg import Matrix
from .scalars import Cyc, print_scalar


def sort_sign(seq):
    """Sign of the permutation sorting seq ascending; (0, ()) on repeats."""
    seq = list(seq)
    sign = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and seq[j - 1] == seq[j]:
            return 0, ()
    return sign, tuple(seq)


def rev_sign(k):
    """Sign (-1)^(k(k-1)/2) of reversing a k-letter word; the pairing of
    d_I against the antisymmetrized word o(x_I) evaluates covectors
    against the reversed word, so <d_I, o(x_I)> equals this sign."""
    return -1 if (k * (k - 1) // 2) % 2 else 1


def merge_sign(a, b):
    """Sign of the shuffle merging two increasing tuples; (0, ()) on overlap."""
    out = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return 0, ()
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            # b[j] jumps over the remaining entries of a
            if (len(a) - i) % 2:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


class Poly:
    """Polynomial in n variables, exponent-tuple keyed, Cyc coefficients."""

    __slots__ = ("n", "order", "terms")

    def __init__(self, n, order, terms=None):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "order", order)
        clean = {}
        for exps, c in (terms or {}).items():
            c = Cyc.of(c, order)
            if not c.is_zero():
                assert len(exps) == n and all(e >= 0 for e in exps)
                clean[tuple(exps)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def zero(n, order):
        return Poly(n, order, {})

    @staticmethod
    def const(value, n, order):
        return Poly(n, order, {(0,) * n: Cyc.of(value, order)})

    @staticmethod
    def variable(i, n, order):
        e = [0] * n
        e[i] = 1
        return Poly(n, order, {tuple(e): Cyc.one(order)})

    @staticmethod
    def monomial(exps, coeff, order):
        return Poly(len(exps), order, {tuple(exps): Cyc.of(coeff, order)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.n == other.n
            and self.order == other.order
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, self.order, frozenset(self.terms.items())))

    def __add__(self, other):
        assert self.n == other.n
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Cyc.zero(self.order)) + c
        return Poly(self.n, self.order, out)

    def __neg__(self):
        return Poly(self.n, self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            c = Cyc.of(other, self.order)
            return Poly(self.n, self.order, {e: v * c for e, v in self.terms.items()})
        assert isinstance(other, Poly) and self.n == other.n
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if e in out:
                    out[e] = out[e] + c
                else:
                    out[e] = c
        return Poly(self.n, self.order, out)

    __rmul__ = __mul__

    def substitute(self, images):
        """Substitute x_i -> images[i] (a Poly) for every variable."""
        assert len(images) == self.n
        out = Poly.zero(self.n, self.order)
        for exps, c in self.terms.items():
            term = Poly.const(c, self.n, self.order)
            for i, e in enumerate(exps):
                for _ in range(e):
                    term = term * images[i]
            out = out + term
        return out

    def deriv(self, i):
        out = {}
        for exps, c in self.terms.items():
            if exps[i]:
                e = list(exps)
                e[i] -= 1
                out[tuple(e)] = c * exps[i]
        return Poly(self.n, self.order, out)

    def degrees(self):
        return sorted({sum(e) for e in self.terms})

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            _term_str(c, e, ())
            for e, c in sorted(self.terms.items())
        )

    __repr__ = __str__


def subst_matrix(p: Poly, m: Matrix) -> Poly:
    """Substitute x_i -> sum_k m[k][i] x_k (the linear action with column
    i giving the image of the i-th variable)."""
    images = [
        Poly(p.n, p.order, {_unit(p.n, k): m.rows[k][i] for k in range(p.n)})
        for i in range(p.n)
    ]
    return p.substitute(images)


def _unit(n, k):
    e = [0] * n
    e[k] = 1
    return tuple(e)


def minor_det(m: Matrix, rows, cols):
    order = m.order
    k = len(rows)
    assert k == len(cols)
    if k == 0:
        return Cyc.one(order)
    sub = [[m.rows[r][c] for c in cols] for r in rows]
    from .linalg import det as _det

    return _det(Matrix(order, sub))


class Polyvector:
    """Map from strictly increasing index tuples to Poly coefficients."""

    __slots__ = ("n", "order", "comps")

    def __init__(self, n, order, comps=None):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "order", order)
        clean = {}
        for idx, p in (comps or {}).items():
            idx = tuple(idx)
            assert all(0 <= i < n for i in idx)
            assert all(a < b for a, b in zip(idx, idx[1:]))
            if not p.is_zero():
                clean[idx] = p
        object.__setattr__(self, "comps", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polyvector is immutable")

    @staticmethod
    def zero(n, order):
        return Polyvector(n, order, {})

    @staticmethod
    def from_poly(p: Poly, idx=()):
        return Polyvector(p.n, p.order, {tuple(idx): p})

    @staticmethod
    def term(coeff, exps, idx, order):
        """Build coeff * x^exps * d_idx, normalizing the index order."""
        sgn, key = sort_sign(idx)
        if sgn == 0:
            return Polyvector.zero(len(exps), order)
        p = Poly.monomial(exps, Cyc.of(coeff, order) * sgn, order)
        return Polyvector(len(exps), order, {key: p})

    def is_zero(self):
        return not self.comps

    def __eq__(self, other):
        return (
            isinstance(other, Polyvector)
            and self.n == other.n
            and self.order == other.order
            and self.comps == other.comps
        )

    def __hash__(self):
        return hash((self.n, self.order, frozenset(self.comps.items())))

    def __add__(self, other):
        assert self.n == other.n
        out = dict(self.comps)
        for idx, p in other.comps.items():
            out[idx] = out[idx] + p if idx in out else p
        return Polyvector(self.n, self.order, out)

    def __neg__(self):
        return Polyvector(self.n, self.order, {i: -p for i, p in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Scalar or polynomial multiple (polynomials are even, no signs)."""
        if isinstance(other, (int, Fraction, Cyc, Poly)):
            return Polyvector(
                self.n, self.order, {i: p * other for i, p in self.comps.items()}
            )
        return NotImplemented

    __rmul__ = __mul__

    def pair(self, idx) -> Poly:
        """Evaluation against the antisymmetrized basis element o(x_idx):
        the coefficient at the normalized index tuple times the
        reversed-word pairing sign rev_sign(len(idx))."""
        sgn, key = sort_sign(idx)
        if sgn == 0:
            return Poly.zero(self.n, self.order)
        p = self.comps.get(key)
        if p is None:
            return Poly.zero(self.n, self.order)
        return p * (sgn * rev_sign(len(key)))

    def exterior_degrees(self):
        return sorted({len(i) for i in self.comps})

    def degree(self):
        degs = self.exterior_degrees()
        if len(degs) != 1:
            raise ValueError("polyvector is not homogeneous in exterior degree")
        return degs[0]

    def wedge(self, other: "Polyvector") -> "Polyvector":
        assert self.n == other.n
        out = Polyvector.zero(self.n, self.order)
        acc = {}
        for i1, p1 in self.comps.items():
            for i2, p2 in other.comps.items():
                sgn, key = merge_sign(i1, i2)
                if sgn == 0:
                    continue
                p = p1 * p2 * sgn
                acc[key] = acc[key] + p if key in acc else p
        return Polyvector(self.n, self.order, acc)

    def __str__(self):
        if not self.comps:
            return "0"
        parts = []
        for idx in sorted(self.comps, key=lambda i: (len(i), i)):
            p = self.comps[idx]
            for exps, c in sorted(p.terms.items()):
                parts.append(_term_str(c, exps, idx))
        return " + ".join(parts)

    __repr__ = __str__


def _term_str(c: Cyc, exps, idx):
    factors = []
    for i, e in enumerate(exps):
        if e == 1:
            factors.append(f"x{i + 1}")
        elif e > 1:
            factors.append(f"x{i + 1}^{e}")
    if idx:
        factors.append("^".join(f"d{i + 1}" for i in idx))
    cs = print_scalar(c)
    if not factors:
        return f"({cs})" if (" " in cs or "/" in cs or "-" in cs) else cs
    if c == 1:
        return "*".join(factors)
    if c == -1:
        return "-" + "*".join(factors)
    return f"({cs})*" + "*".join(factors)


def act(x: Polyvector, h: Matrix, h_inv: Matrix) -> Polyvector:
    """Right action of a group element (matrix h) on a polyvector:
    polynomial factors through the inverse substitution, dual-basis
    wedge factors through minors of h."""
    n, order = x.n, x.order
    out = {}
    for idx, p in x.comps.items():
        p2 = subst_matrix(p, h_inv)
        k = len(idx)
        if k == 0:
            key = ()
            out[key] = out[key] + p2 if key in out else p2
            continue
        for cols in _increasing_tuples(n, k):
            d = minor_det(h, idx, cols)
            if d.is_zero():
                continue
            q = p2 * d
            out[cols] = out[cols] + q if cols in out else q
    return Polyvector(n, order, out)


def _increasing_tuples(n, k):
    from itertools import combinations

    return combinations(range(n), k)


def euler_field(g: Matrix) -> Polyvector:
    """The degree (1,1) element sum_i (x_i - g.x_i) d_i whose left wedge
    multiplication is the differential on the g-component."""
    n, order = g.nrows, g.order
    comps = {}
    for i in range(n):
        terms = {_unit(n, i): Cyc.one(order)}
        for k in range(n):
            c = g.rows[k][i]
            if not c.is_zero():
                e = _unit(n, k)
                terms[e] = terms.get(e, Cyc.zero(order)) - c
        p = Poly(n, order, terms)
        if not p.is_zero():
            comps[(i,)] = p
    return Polyvector(n, order, comps)


def sub_multisets(beta):
    return iter_product(*[range(b + 1) for b in beta])


def circle_product(x: Polyvector, y: Polyvector, gmat: Matrix | None = None) -> Polyvector:
    """Closed-form circle product of polyvectors.

    For components f d_I and q d_J this inserts the d_J block at each
    slot l of d_I, differentiates q by the displaced direction, and
    splits the remaining polynomial factors around the insertion point;
    the right-hand split factors are twisted by gmat when given.  The
    permutation average collapses to multiset weights

        a_i * prod_j C(beta_j, L_j) * |L|! (t-1-|L|)! / t!

    over sub-multisets L of beta = alpha - e_i, summing to the plain
    interior derivative when gmat is None.  The per-slot sign
    (-1)^((m-1)(l+d)) matches the chain-level contraction under the
    reversed-word pairing (see the oracle agreement tests).
    """
    n, order = x.n, x.order
    assert y.n == n
    acc: dict[tuple, Poly] = {}
    for idx_i, f in x.comps.items():
        d = len(idx_i)
        for idx_j, q in y.comps.items():
            m = len(idx_j)
            for pos in range(d):
                jl = idx_i[pos]
                sgn_zeta = -1 if ((m - 1) * (pos + d - 1)) % 2 else 1
                wsgn, wkey = sort_sign(idx_i[:pos] + idx_j + idx_i[pos + 1:])
                if wsgn == 0:
                    continue
                for alpha, qc in q.terms.items():
                    a_i = alpha[jl]
                    if a_i == 0:
                        continue
                    t = sum(alpha)
                    beta = list(alpha)
                    beta[jl] -= 1
                    tot = t - 1
                    for L in sub_multisets(beta):
                        ls = sum(L)
                        weight = Fraction(
                            a_i
                            * _prod_comb(beta, L)
                            * factorial(ls)
                            * factorial(tot - ls),
                            factorial(t),
                        )
                        rest = tuple(b - l for b, l in zip(beta, L))
                        right = Poly.monomial(rest, Cyc.one(order), order)
                        if gmat is not None:
                            right = subst_matrix(right, gmat)
                        p = f * Poly.monomial(L, qc * (weight * sgn_zeta * wsgn), order) * right
                        acc[wkey] = acc[wkey] + p if wkey in acc else p
    return Polyvector(n, order, acc)


def _prod_comb(beta, L):
    out = 1
    for b, l in zip(beta, L):
        out *= comb(b, l)
    return out


def schouten(x: Polyvector, y: Polyvector) -> Polyvector:
    """Schouten bracket of polyvector fields: the graded commutator of
    the untwisted circle product."""
    dx = x.degree() if not x.is_zero() else 0
    dy = y.degree() if not y.is_zero() else 0
    first = circle_product(x, y)
    second = circle_product(y, x)
    sign = -1 if ((dx - 1) * (dy - 1)) % 2 else 1
    return first - second * sign
