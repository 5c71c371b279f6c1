"""The Gerstenhaber bracket on the group-decorated cochain complex.

The bracket of two invariant reduced cocycles is assembled pairwise: for
components X_g and Y_h, the twisted Schouten commutator is computed by
the closed circle-product formula, projected to the reduced subspace of
gh, and tagged with gh.  Vanishing criteria from the codimension grading
are provided alongside.
"""

from .cochain import (
    Cochain,
    codim_decompose,
    is_cocycle,
    is_invariant,
    is_reduced,
    project,
)
from .groups import geometry
from .linalg import Matrix, echelon_span, kernel_basis, solve_membership
from .polyvec import circle_product
from .scalars import Cyc


class BracketReport:
    """Bracket value plus per-pair diagnostics.

    result: the bracket as a cochain.
    per_component_terms: (g, h) -> projected pairwise commutator, nonzero
        entries only; summing them at gh reassembles result.
    vanishing_diagnostics: (g, h, reason) for every pair that contributed
        nothing, with reason one of "schouten zero", "perp-intersection",
        "projection kill".
    """

    __slots__ = ("result", "per_component_terms", "vanishing_diagnostics")

    def __init__(self, result, per_component_terms, vanishing_diagnostics):
        object.__setattr__(self, "result", result)
        object.__setattr__(self, "per_component_terms", per_component_terms)
        object.__setattr__(self, "vanishing_diagnostics", vanishing_diagnostics)

    def __setattr__(self, name, value):
        raise AttributeError("BracketReport is immutable")


def pair_commutator(x, g, y, h):
    """Twisted Schouten commutator of two decorated polyvectors, before
    projection: (X tagged g) circle (Y tagged h) minus the sign-adjusted
    reverse circle."""
    sign = -1 if ((x.degree() - 1) * (y.degree() - 1)) % 2 else 1
    forward = circle_product(x, y, g)
    backward = circle_product(y, x, h)
    return forward - backward * sign


def moved_intersection(group, g, h):
    """Basis of the intersection of the moved subspaces of g and h."""
    order = group.scalar_order
    u = [list(v) for v in geometry(group, g).moved_basis]
    w = [list(v) for v in geometry(group, h).moved_basis]
    if not u or not w:
        return []
    n = group.dim
    cols = u + w
    stacked = Matrix(order, [[cols[j][i] for j in range(len(cols))]
                             for i in range(n)])
    vectors = []
    for rel in kernel_basis(stacked):
        v = [Cyc.zero(order)] * n
        for a, basis_vec in zip(rel[:len(u)], u):
            if a:
                for i in range(n):
                    v[i] = v[i] + a * basis_vec[i]
        if any(v):
            vectors.append(tuple(v))
    return echelon_span(vectors, order)


def perp_vanishing_applies(group, g, h):
    """Whether the intersection of the two moved subspaces is nonzero and
    stable under every generator; when that holds for all conjugates, the
    bracket of classes supported on the two conjugacy classes vanishes."""
    order = group.scalar_order
    inter = moved_intersection(group, g, h)
    if not inter:
        return False
    for gen in group.generators:
        for v in inter:
            if solve_membership(inter, tuple(gen.apply(list(v))), order) is None:
                return False
    return True


def _require(cond, message):
    if not cond:
        raise ValueError(message)


def gerstenhaber(x, y):
    """Bracket of two G-invariant reduced cocycles.

    Each input must already be invariant (apply reynolds first if not),
    in reduced form (apply project first if not), and a cocycle.  The
    result is again an invariant cocycle, of homological degree
    |x| + |y| - 1, supported in codimension degree i + j.
    """
    _require(x.group is y.group, "cochains live over different groups")
    _require(is_invariant(x), "left operand is not G-invariant (apply reynolds first)")
    _require(is_invariant(y), "right operand is not G-invariant (apply reynolds first)")
    _require(is_reduced(x), "left operand is not in reduced form (apply project first)")
    _require(is_reduced(y), "right operand is not in reduced form (apply project first)")
    _require(is_cocycle(x), "left operand is not a cocycle")
    _require(is_cocycle(y), "right operand is not a cocycle")
    group = x.group
    degree = x.degree + y.degree - 1
    comps = {}
    per_terms = {}
    diagnostics = []
    for g, xg in sorted(x.comps.items()):
        gmat = group.matrix(g)
        for h, yh in sorted(y.comps.items()):
            raw = pair_commutator(xg, gmat, yh, group.matrix(h))
            if raw.is_zero():
                diagnostics.append((g, h, "schouten zero"))
                continue
            k = group.mult(g, h)
            projected = project(Cochain.single(group, k, raw)).component(k)
            if projected.is_zero():
                reason = ("perp-intersection" if moved_intersection(group, g, h)
                          else "projection kill")
                diagnostics.append((g, h, reason))
                continue
            per_terms[(g, h)] = projected
            comps[k] = comps[k] + projected if k in comps else projected
    return BracketReport(Cochain(group, degree, comps), per_terms, diagnostics)


def minimal_degree_vanishing(x, y):
    """Whether both inputs sit in minimal homological degree off the
    action kernel: every component supported where the group acts
    nontrivially, with exterior part exactly the volume form (exterior
    degree equal to codim).  When true, the bracket represents zero."""
    group = x.group
    kernel = set(group.kernel_indices)
    for c in (x, y):
        for g in c.comps:
            if g in kernel:
                return False
            if geometry(group, g).codim != c.degree:
                return False
    return True
