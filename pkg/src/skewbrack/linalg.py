"""Dense exact linear algebra over a fixed cyclotomic field.

Everything here is deterministic: row reduction always picks the first
row with a nonzero entry as pivot, so identical inputs give identical
outputs (no randomized or hash-ordered choices anywhere).
"""

from __future__ import annotations

from .scalars import Cyc


class Matrix:
    """Immutable dense matrix with Cyc entries (all of one order)."""

    __slots__ = ("order", "nrows", "ncols", "rows")

    def __init__(self, order, rows):
        object.__setattr__(self, "order", order)
        rows = tuple(tuple(Cyc.of(e, order) for e in r) for r in rows)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", len(rows[0]) if rows else 0)
        assert all(len(r) == self.ncols for r in rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def identity(n, order):
        one, zero = Cyc.one(order), Cyc.zero(order)
        return Matrix(order, [[one if i == j else zero for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.order == other.order and self.rows == other.rows

    def __hash__(self):
        return hash((self.order, self.rows))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        assert self.ncols == other.nrows
        cols = list(zip(*other.rows)) if other.rows else []
        zero = Cyc.zero(self.order)
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(self.order, out)

    def __sub__(self, other):
        assert self.nrows == other.nrows and self.ncols == other.ncols
        return Matrix(
            self.order,
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
        )

    def transpose(self):
        return Matrix(self.order, list(zip(*self.rows)) if self.rows else [])

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def apply(self, vec):
        """Matrix times column vector."""
        assert len(vec) == self.ncols
        zero = Cyc.zero(self.order)
        out = []
        for r in self.rows:
            acc = zero
            for a, v in zip(r, vec):
                if a and v:
                    acc = acc + a * v
            out.append(acc)
        return tuple(out)

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in r) for r in self.rows)
        return f"Matrix[{body}]"


def _rref_rows(order, rows):
    # In-place reduced row echelon form on a list of row lists.
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    lead = 0
    for col in range(ncols):
        piv = None
        for i in range(lead, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[lead], rows[piv] = rows[piv], rows[lead]
        inv = rows[lead][col].inverse()
        rows[lead] = [e * inv for e in rows[lead]]
        for i in range(nrows):
            if i != lead and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[lead])]
        pivots.append(col)
        lead += 1
        if lead == nrows:
            break
    return rows, tuple(pivots)


def rref(m: Matrix):
    """Reduced row echelon form.  Returns (matrix, pivot column indices)."""
    rows, pivots = _rref_rows(m.order, m.rows)
    return Matrix(m.order, rows) if rows else m, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix):
    """Basis of the right kernel, one vector per free column, ordered by
    ascending free column index; the free coordinate is set to 1."""
    r, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivot_set]
    one, zero = Cyc.one(m.order), Cyc.zero(m.order)
    basis = []
    for f in free:
        v = [zero] * m.ncols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -r.rows[i][f]
        basis.append(tuple(v))
    return basis


def image_basis(m: Matrix):
    """Echelonized basis of the column space (so two computations of the
    same subspace yield literally equal vector lists)."""
    r, pivots = rref(m.transpose())
    return [tuple(r.rows[i]) for i in range(len(pivots))]


def solve_membership(vectors, target, order):
    """Express target as a linear combination of the given vectors.

    Returns the coefficient list of the solution with all free
    parameters set to zero, or None when target is outside the span.
    """
    n = len(target)
    k = len(vectors)
    zero = Cyc.zero(order)
    if k == 0:
        return [] if all(not t for t in target) else None
    assert all(len(v) == n for v in vectors)
    aug = [[vectors[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    rows, pivots = _rref_rows(order, aug)
    if k in pivots:
        return None
    coeffs = [zero] * k
    for i, p in enumerate(pivots):
        coeffs[p] = rows[i][k]
    return coeffs


def det(m: Matrix) -> Cyc:
    assert m.nrows == m.ncols
    order = m.order
    rows = [list(r) for r in m.rows]
    n = m.nrows
    sign = 1
    out = Cyc.one(order)
    for col in range(n):
        piv = None
        for i in range(col, n):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            return Cyc.zero(order)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        p = rows[col][col]
        out = out * p
        inv = p.inverse()
        for i in range(col + 1, n):
            if rows[i][col]:
                f = rows[i][col] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[col])]
    return out if sign == 1 else -out


def mat_inverse(m: Matrix) -> Matrix:
    assert m.nrows == m.ncols
    n = m.nrows
    ident = Matrix.identity(n, m.order)
    aug = [list(r) + list(ir) for r, ir in zip(m.rows, ident.rows)]
    rows, pivots = _rref_rows(m.order, aug)
    if pivots != tuple(range(n)):
        raise ValueError("matrix is singular")
    return Matrix(m.order, [r[n:] for r in rows])


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a):
    return tuple(c * x for x in a)


def vec_is_zero(a):
    return all(not x for x in a)


def zero_vec(n, order):
    z = Cyc.zero(order)
    return tuple(z for _ in range(n))


def echelon_span(vectors, order):
    """Canonical echelonized basis of the span of the given row vectors."""
    if not vectors:
        return []
    rows, pivots = _rref_rows(order, vectors)
    return [tuple(rows[i]) for i in range(len(pivots))]


def span_equal(vectors_a, vectors_b, order):
    """Whether two vector lists span the same subspace."""
    return echelon_span(vectors_a, order) == echelon_span(vectors_b, order)
