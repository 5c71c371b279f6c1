"""Finite matrix groups acting on V.

Enumeration from generators, multiplication data, conjugacy classes, and
the per-element geometry: the fixed subspace V^g, its canonical complement
(1-g)V, and the volume form omega_g spanning the top exterior power of the
dual of the complement.
"""

from .linalg import (
    Matrix,
    image_basis,
    kernel_basis,
    mat_inverse,
    rank,
    span_equal,
)
from .polyvec import Poly, Polyvector
from .scalars import Cyc


class GroupElement:
    """One element: stable index, matrix, and the first generator word
    reaching it during enumeration ("e" for the identity)."""

    __slots__ = ("index", "matrix", "word")

    def __init__(self, index, matrix, word):
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "word", word)

    def __setattr__(self, name, value):
        raise AttributeError("GroupElement is immutable")

    def __repr__(self):
        return f"GroupElement({self.index}, {self.word})"


class Group:
    """A finite matrix group with its multiplication table.

    elements[0] is always the identity.  mult_table[i][j] is the index of
    elements[i].matrix * elements[j].matrix.  kernel_indices lists the
    elements acting as the identity on V (trivial for faithful actions).
    """

    __slots__ = (
        "dim",
        "scalar_order",
        "generators",
        "elements",
        "mult_table",
        "inverses",
        "conj_classes",
        "kernel_indices",
        "_index_of",
    )

    def __init__(self, dim, scalar_order, generators, elements, mult_table,
                 inverses, conj_classes, kernel_indices, index_of):
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "scalar_order", scalar_order)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "mult_table", mult_table)
        object.__setattr__(self, "inverses", inverses)
        object.__setattr__(self, "conj_classes", conj_classes)
        object.__setattr__(self, "kernel_indices", kernel_indices)
        object.__setattr__(self, "_index_of", index_of)

    def __setattr__(self, name, value):
        raise AttributeError("Group is immutable")

    def __len__(self):
        return len(self.elements)

    def matrix(self, i):
        return self.elements[i].matrix

    def mult(self, i, j):
        return self.mult_table[i][j]

    def inverse(self, i):
        return self.inverses[i]

    def index_of(self, matrix):
        """Index of the element with this matrix, or a ValueError."""
        try:
            return self._index_of[matrix]
        except KeyError:
            raise ValueError("matrix is not an element of the group")

    def conjugate(self, g, h):
        """Index of h g h^-1."""
        return self.mult(self.mult(h, g), self.inverse(h))


def enumerate_group(generators, bound=1024):
    """Breadth-first closure of a generator list into a Group.

    Deterministic ordering: the identity first, then words in the
    generators in input order, shortest words first.  Raises ValueError
    for bad generators and RuntimeError when the closure exceeds bound.
    """
    if not generators:
        raise ValueError("at least one generator is required")
    n = generators[0].nrows
    order = generators[0].order
    for g in generators:
        if g.nrows != g.ncols:
            raise ValueError("generators must be square matrices")
        if g.nrows != n or g.order != order:
            raise ValueError("generators must share one dimension and scalar order")
        if rank(g) != n:
            raise ValueError("generators must be invertible")

    identity = Matrix.identity(n, order)
    elements = [GroupElement(0, identity, "e")]
    index_of = {identity: 0}
    frontier = [0]
    while frontier:
        fresh = []
        for i in frontier:
            base = elements[i]
            for j, gen in enumerate(generators):
                m = base.matrix * gen
                if m in index_of:
                    continue
                if len(elements) >= bound:
                    raise RuntimeError("group not finite within bound")
                word = f"g{j + 1}" if base.word == "e" else f"{base.word}*g{j + 1}"
                elt = GroupElement(len(elements), m, word)
                index_of[m] = elt.index
                elements.append(elt)
                fresh.append(elt.index)
        frontier = fresh

    size = len(elements)
    mult_table = [
        [index_of[elements[i].matrix * elements[j].matrix] for j in range(size)]
        for i in range(size)
    ]
    inverses = [mult_table[i].index(0) for i in range(size)]

    assigned = [False] * size
    conj_classes = []
    for i in range(size):
        if assigned[i]:
            continue
        orbit = set()
        for h in range(size):
            orbit.add(mult_table[mult_table[h][i]][inverses[h]])
        cls = tuple(sorted(orbit))
        for k in cls:
            assigned[k] = True
        conj_classes.append(cls)

    kernel_indices = [i for i in range(size) if elements[i].matrix == identity]
    return Group(n, order, list(generators), elements, mult_table, inverses,
                 conj_classes, kernel_indices, index_of)


def resolve_word(group, word):
    """Index of the element named by a generator word like "g1*g2".

    Accepts "e" for the identity and bare integers (as int or string)
    naming an element index directly.
    """
    if isinstance(word, int):
        if 0 <= word < len(group.elements):
            return word
        raise ValueError(f"element index {word} out of range")
    text = word.strip()
    if text == "e":
        return 0
    if text.isdigit():
        return resolve_word(group, int(text))
    i = 0
    for token in text.split("*"):
        token = token.strip()
        if not token.startswith("g") or not token[1:].isdigit():
            raise ValueError(f"bad generator token {token!r}")
        k = int(token[1:])
        if not 1 <= k <= len(group.generators):
            raise ValueError(f"generator {token!r} out of range")
        i = group.index_of(group.matrix(i) * group.generators[k - 1])
    return i


class GroupGeometry:
    """The splitting V = V^g + (1-g)V for one group element.

    fixed_basis and moved_basis are echelonized vector tuples; adapted has
    them as columns (fixed first); dual_change = adapted^-1, whose rows are
    the adapted dual coordinates in terms of the original ones; omega is
    the wedge of the moved dual coordinates, scaled so its first nonzero
    coefficient is 1.
    """

    __slots__ = ("element", "matrix", "fixed_basis", "moved_basis", "codim",
                 "adapted", "dual_change", "omega")

    def __init__(self, element, matrix, fixed_basis, moved_basis, codim,
                 adapted, dual_change, omega):
        object.__setattr__(self, "element", element)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "fixed_basis", fixed_basis)
        object.__setattr__(self, "moved_basis", moved_basis)
        object.__setattr__(self, "codim", codim)
        object.__setattr__(self, "adapted", adapted)
        object.__setattr__(self, "dual_change", dual_change)
        object.__setattr__(self, "omega", omega)

    def __setattr__(self, name, value):
        raise AttributeError("GroupGeometry is immutable")


def geometry(group, g):
    """GroupGeometry of the element with index g."""
    if not 0 <= g < len(group.elements):
        raise ValueError(f"element index {g} out of range")
    n, order = group.dim, group.scalar_order
    m = group.matrix(g)
    diff = Matrix.identity(n, order) - m
    fixed = [tuple(v) for v in kernel_basis(diff)]
    moved = [tuple(v) for v in image_basis(diff)]
    codim = len(moved)
    cols = list(fixed) + list(moved)
    adapted = Matrix(order, [[cols[j][i] for j in range(n)] for i in range(n)])
    dual_change = mat_inverse(adapted)
    omega = Polyvector.from_poly(Poly.const(1, n, order), ())
    for r in range(n - codim, n):
        row = dual_change.rows[r]
        covec = Polyvector(n, order, {
            (j,): Poly.const(row[j], n, order)
            for j in range(n) if not row[j].is_zero()
        })
        omega = omega.wedge(covec)
    if codim and not omega.is_zero():
        lead = omega.comps[min(omega.comps)]
        lead_c = lead.terms[min(lead.terms)]
        omega = omega * lead_c.inverse()
    return GroupGeometry(g, m, fixed, moved, codim, adapted, dual_change, omega)


def conjugate_geometry_check(group, g, h):
    """Whether h carries the splitting of g to the splitting of h g h^-1."""
    order = group.scalar_order
    geo_g = geometry(group, g)
    geo_c = geometry(group, group.conjugate(g, h))
    hmat = group.matrix(h)
    push_fixed = [tuple(hmat.apply(list(v))) for v in geo_g.fixed_basis]
    push_moved = [tuple(hmat.apply(list(v))) for v in geo_g.moved_basis]
    return (span_equal(push_fixed, geo_c.fixed_basis, order)
            and span_equal(push_moved, geo_c.moved_basis, order))
