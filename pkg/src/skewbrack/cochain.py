"""Group-decorated polyvector cochains.

A cochain is a finite sum over group elements g of polyvectors X_g, with
differential given componentwise by left wedge against the Euler field of
g.  The module provides the G-action, Reynolds averaging, the reduced
projections p_g, the codimension grading, and exact cohomology
computations per (exterior degree, polynomial degree) piece.
"""

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .groups import geometry
from .linalg import Matrix, echelon_span, kernel_basis, solve_membership
from .polyvec import Poly, Polyvector, act, euler_field
from .scalars import Cyc


class Cochain:
    """Map from group-element indices to polyvectors of one exterior degree.

    Absent components are zero.  The group is carried along so actions and
    differentials can resolve matrices and conjugation without extra
    arguments.
    """

    __slots__ = ("group", "degree", "comps")

    def __init__(self, group, degree, comps=None):
        clean = {}
        for g, pv in (comps or {}).items():
            if pv.is_zero():
                continue
            if pv.degree() != degree:
                raise ValueError("component exterior degree disagrees with cochain degree")
            clean[g] = pv
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "comps", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Cochain is immutable")

    @staticmethod
    def zero(group, degree):
        return Cochain(group, degree, {})

    @staticmethod
    def single(group, g, pv):
        return Cochain(group, pv.degree(), {g: pv})

    def is_zero(self):
        return not self.comps

    def component(self, g):
        got = self.comps.get(g)
        if got is not None:
            return got
        return Polyvector.zero(self.group.dim, self.group.scalar_order)

    def support(self):
        return sorted(self.comps)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.group is other.group and self.degree == other.degree
                and self.comps == other.comps)

    def __add__(self, other):
        if self.group is not other.group or self.degree != other.degree:
            raise ValueError("cochain mismatch")
        out = dict(self.comps)
        for g, pv in other.comps.items():
            out[g] = out[g] + pv if g in out else pv
        return Cochain(self.group, self.degree, out)

    def __neg__(self):
        return Cochain(self.group, self.degree,
                       {g: -pv for g, pv in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return Cochain(self.group, self.degree,
                       {g: pv * scalar for g, pv in self.comps.items()})

    def poly_degrees(self):
        out = set()
        for pv in self.comps.values():
            for p in pv.comps.values():
                out.update(p.degrees())
        return sorted(out)

    def __str__(self):
        if not self.comps:
            return "0"
        bits = []
        for g in sorted(self.comps):
            word = self.group.elements[g].word
            bits.append(f"({self.comps[g]}) {word}")
        return " + ".join(bits)

    def __repr__(self):
        return f"Cochain({self})"


def euler(geom):
    """The Euler field of one group element, sum_i (x_i - g.x_i) d_i."""
    return euler_field(geom.matrix)


def differential(c):
    """Componentwise left wedge with the Euler field; raises both the
    exterior and the polynomial degree by one."""
    out = {}
    for g, pv in c.comps.items():
        w = euler_field(c.group.matrix(g)).wedge(pv)
        if not w.is_zero():
            out[g] = w
    return Cochain(c.group, c.degree + 1, out)


def is_cocycle(c):
    return differential(c).is_zero()


def act_cochain(c, h):
    """Right action: the component at g moves to h^-1 g h, with the
    polyvector transported through h."""
    group = c.group
    hm = group.matrix(h)
    hm_inv = group.matrix(group.inverse(h))
    out = {}
    for g, pv in c.comps.items():
        k = group.conjugate(g, group.inverse(h))
        moved = act(pv, hm, hm_inv)
        out[k] = out[k] + moved if k in out else moved
    return Cochain(group, c.degree, out)


def reynolds(c):
    """Group average (1/|G|) sum_h c.h; idempotent, image invariant."""
    group = c.group
    total = Cochain.zero(group, c.degree)
    for h in range(len(group)):
        total = total + act_cochain(c, h)
    return total * Cyc.of(Fraction(1, len(group)), group.scalar_order)


def is_invariant(c):
    return all(act_cochain(c, h) == c for h in range(len(c.group)))


def _filter_reduced_adapted(pv, n, codim):
    """Drop terms outside S(V^g) (x) Lambda(V^g)* wedge omega_g, in adapted
    coordinates where the moved directions are the last codim ones."""
    moved = frozenset(range(n - codim, n))
    comps = {}
    for idx, p in pv.comps.items():
        if not moved <= set(idx):
            continue
        kept = {e: c for e, c in p.terms.items()
                if all(e[j] == 0 for j in moved)}
        if kept:
            comps[idx] = Poly(pv.n, pv.order, kept)
    return Polyvector(pv.n, pv.order, comps)


def project(c):
    """Componentwise reduced projection p_g.

    In coordinates adapted to V = V^g + (1-g)V, kills every polynomial
    term containing a moved variable and every wedge not divisible by
    omega_g, then transforms back.
    """
    group = c.group
    out = {}
    for g, pv in c.comps.items():
        geom = geometry(group, g)
        if geom.codim == 0:
            out[g] = pv
            continue
        adapted = act(pv, geom.adapted, geom.dual_change)
        kept = _filter_reduced_adapted(adapted, group.dim, geom.codim)
        if kept.is_zero():
            continue
        out[g] = act(kept, geom.dual_change, geom.adapted)
    return Cochain(group, c.degree, out)


def is_reduced(c):
    return project(c) == c


def codim_decompose(c):
    """Split by codim V^g; keys are the codimensions that occur."""
    group = c.group
    parts = {}
    for g, pv in c.comps.items():
        i = geometry(group, g).codim
        parts.setdefault(i, {})[g] = pv
    return {i: Cochain(group, c.degree, comps) for i, comps in sorted(parts.items())}


def monomials(n, total):
    """Exponent tuples of the given total degree, lexicographic by the
    multiset of variable indices."""
    if n == 0:
        return [()] if total == 0 else []
    out = []
    for combo in combinations_with_replacement(range(n), total):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def ambient_keys(n, p, m):
    """Deterministic coordinate order for one group component of the
    bigraded (p, m) piece: wedge index tuples, then exponent tuples."""
    if p < 0 or p > n or m < 0:
        return []
    return [(idx, e) for idx in combinations(range(n), p) for e in monomials(n, m)]


def flatten_polyvector(pv, keys, zero):
    out = []
    for idx, exps in keys:
        p = pv.comps.get(idx)
        out.append(p.terms.get(exps, zero) if p is not None else zero)
    return out


def polyvector_from_vector(vec, keys, n, order):
    grouped = {}
    for (idx, exps), c in zip(keys, vec):
        if c:
            grouped.setdefault(idx, {})[exps] = c
    return Polyvector(n, order, {idx: Poly(n, order, t) for idx, t in grouped.items()})


def _homogeneous_poly_degree(c):
    degs = c.poly_degrees()
    if len(degs) != 1:
        raise ValueError("cochain is not homogeneous in polynomial degree")
    return degs[0]


def is_coboundary(c):
    """Exact solve of (differential b) = c in the piece one step below.

    Returns (True, witness) or (False, None).  When c is invariant and
    solvable, the witness is averaged so it is invariant too.  Input must
    be a cocycle, homogeneous in both degrees.
    """
    if not is_cocycle(c):
        raise ValueError("input is not a cocycle")
    group = c.group
    p = c.degree
    if c.is_zero():
        return True, Cochain.zero(group, max(p - 1, 0))
    m = _homogeneous_poly_degree(c)
    if p == 0 or m == 0:
        return False, None
    n, order = group.dim, group.scalar_order
    zero = Cyc.zero(order)
    src_keys = ambient_keys(n, p - 1, m - 1)
    tgt_keys = ambient_keys(n, p, m)
    witness = {}
    for g, pv in c.comps.items():
        e_g = euler_field(group.matrix(g))
        columns = []
        sources = []
        for idx, exps in src_keys:
            b = Polyvector.term(1, exps, idx, order)
            columns.append(flatten_polyvector(e_g.wedge(b), tgt_keys, zero))
            sources.append(b)
        target = flatten_polyvector(pv, tgt_keys, zero)
        coeffs = solve_membership(columns, target, order)
        if coeffs is None:
            return False, None
        acc = Polyvector.zero(n, order)
        for b, coef in zip(sources, coeffs):
            if coef:
                acc = acc + b * coef
        if not acc.is_zero():
            witness[g] = acc
    b = Cochain(group, p - 1, witness)
    if is_invariant(c):
        b = reynolds(b)
    return True, b


def centralizer(group, g):
    return [h for h in range(len(group))
            if group.mult(h, g) == group.mult(g, h)]


def centralizer_reynolds(group, g, pv, cent=None):
    """Average a single-component polyvector over the centralizer of g;
    every term of the average stays attached to g."""
    if cent is None:
        cent = centralizer(group, g)
    n, order = group.dim, group.scalar_order
    total = Polyvector.zero(n, order)
    for h in cent:
        total = total + act(pv, group.matrix(h), group.matrix(group.inverse(h)))
    return total * Cyc.of(Fraction(1, len(cent)), order)


def spread_invariant(group, g, pv):
    """Extend a centralizer-invariant polyvector at g to the G-invariant
    cochain supported on the whole conjugacy class of g."""
    comps = {}
    for h in range(len(group)):
        k = group.conjugate(g, group.inverse(h))
        if k not in comps:
            comps[k] = act(pv, group.matrix(h), group.matrix(group.inverse(h)))
    return Cochain(group, pv.degree(), comps)


def reduced_basis_at(group, geom, p, m):
    """Monomial basis of S^m(V^g) (x) Lambda^{p-codim}(V^g)* wedge omega_g
    at one element, written in ambient coordinates."""
    n, order = group.dim, group.scalar_order
    codim = geom.codim
    fixed_cnt = n - codim
    if p < codim or p - codim > fixed_cnt:
        return []
    out = []
    wedge_tail = tuple(range(fixed_cnt, n))
    for exps_fixed in monomials(fixed_cnt, m):
        exps = exps_fixed + (0,) * codim
        for head in combinations(range(fixed_cnt), p - codim):
            adapted_term = Polyvector.term(1, exps, head + wedge_tail, order)
            out.append(act(adapted_term, geom.dual_change, geom.adapted))
    return out


def cohomology_basis(group, p, m):
    """Deterministic basis of the degree-(p, m) cohomology.

    Per conjugacy class: enumerate the reduced monomial basis at the class
    representative, average over the centralizer, echelonize, and spread
    each surviving row to its G-invariant class-supported cochain.
    """
    if p > group.dim:
        raise ValueError("exterior degree exceeds the dimension of V")
    n, order = group.dim, group.scalar_order
    zero = Cyc.zero(order)
    keys = ambient_keys(n, p, m)
    out = []
    for cls in group.conj_classes:
        g = cls[0]
        geom = geometry(group, g)
        basis = reduced_basis_at(group, geom, p, m)
        if not basis:
            continue
        cent = centralizer(group, g)
        vectors = []
        for b in basis:
            avg = centralizer_reynolds(group, g, b, cent)
            if not avg.is_zero():
                vectors.append(flatten_polyvector(avg, keys, zero))
        for row in echelon_span(vectors, order):
            pv = polyvector_from_vector(row, keys, n, order)
            out.append(spread_invariant(group, g, pv))
    return out


def cohomology_dim_direct(group, p, m):
    """Dimension of the (p, m) piece from the full ambient complex.

    Works classwise: at each representative, kernel and image of the
    Euler wedge are computed by exact linear algebra on all of
    S(V) (x) Lambda V*, then cut down to centralizer invariants.  No
    reduced-subspace data is consulted.
    """
    if p > group.dim:
        raise ValueError("exterior degree exceeds the dimension of V")
    n, order = group.dim, group.scalar_order
    zero = Cyc.zero(order)
    src_keys = ambient_keys(n, p, m)
    tgt_keys = ambient_keys(n, p + 1, m + 1)
    below_keys = ambient_keys(n, p - 1, m - 1) if p >= 1 and m >= 1 else []
    total = 0
    for cls in group.conj_classes:
        g = cls[0]
        cent = centralizer(group, g)
        e_g = euler_field(group.matrix(g))
        if tgt_keys:
            columns = []
            for idx, exps in src_keys:
                b = Polyvector.term(1, exps, idx, order)
                columns.append(flatten_polyvector(e_g.wedge(b), tgt_keys, zero))
            mat = Matrix(order, [[columns[j][i] for j in range(len(src_keys))]
                                 for i in range(len(tgt_keys))])
            kernel = kernel_basis(mat)
        else:
            kernel = [tuple(Cyc.one(order) if j == i else zero
                            for j in range(len(src_keys)))
                      for i in range(len(src_keys))]
        averaged_kernel = []
        for v in kernel:
            pv = polyvector_from_vector(v, src_keys, n, order)
            avg = centralizer_reynolds(group, g, pv, cent)
            if not avg.is_zero():
                averaged_kernel.append(flatten_polyvector(avg, src_keys, zero))
        averaged_image = []
        for idx, exps in below_keys:
            img = e_g.wedge(Polyvector.term(1, exps, idx, order))
            if img.is_zero():
                continue
            avg = centralizer_reynolds(group, g, img, cent)
            if not avg.is_zero():
                averaged_image.append(flatten_polyvector(avg, src_keys, zero))
        total += (len(echelon_span(averaged_kernel, order))
                  - len(echelon_span(averaged_image, order)))
    return total
