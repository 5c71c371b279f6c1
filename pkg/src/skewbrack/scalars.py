"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Scalars are represented in the power basis 1, z, ..., z^(d-1) of
Q[x]/Phi_N(x), where Phi_N is the N-th cyclotomic polynomial and
d = deg Phi_N.  All coefficients are exact rationals, so equality is
decidable and every computation downstream of this module is exact.
"""

from __future__ import annotations

import re
from fractions import Fraction

_CYCLOTOMIC_CACHE: dict[int, tuple[int, ...]] = {}


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _int_poly_div_exact(num, den):
    # Exact division of integer polynomials, ascending coefficients.
    # den must be monic up to sign of its leading coefficient.
    num = list(num)
    den = list(den)
    while den and den[-1] == 0:
        den.pop()
    dn, dd = len(num) - 1, len(den) - 1
    quot = [0] * (dn - dd + 1)
    for k in range(dn - dd, -1, -1):
        c = num[dd + k]
        assert c % den[dd] == 0
        q = c // den[dd]
        quot[k] = q
        for i, dc in enumerate(den):
            num[i + k] -= q * dc
    assert all(c == 0 for c in num)
    return quot


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending.

    Computed by exact division: Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d.
    """
    if n < 1:
        raise ValueError("cyclotomic order must be a positive integer")
    if n not in _CYCLOTOMIC_CACHE:
        num = [-1] + [0] * (n - 1) + [1]
        for d in _divisors(n):
            if d < n:
                num = _int_poly_div_exact(num, cyclotomic_polynomial(d))
        _CYCLOTOMIC_CACHE[n] = tuple(num)
    return _CYCLOTOMIC_CACHE[n]


def field_degree(order: int) -> int:
    return len(cyclotomic_polynomial(order)) - 1


def _reduce_mod_phi(order, coeffs):
    # Reduce an ascending rational coefficient list mod Phi_order.
    phi = cyclotomic_polynomial(order)
    d = len(phi) - 1
    coeffs = [Fraction(c) for c in coeffs]
    for k in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[k]
        if c:
            for i in range(d + 1):
                coeffs[k - d + i] -= c * phi[i]
        coeffs.pop()
    while len(coeffs) < d:
        coeffs.append(Fraction(0))
    return tuple(coeffs)


class Cyc:
    """An element of Q(zeta_N) for a fixed N (the `order`).

    Operations between scalars of different orders raise ValueError;
    plain ints and Fractions coerce into any order.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        assert len(self.coeffs) == field_degree(order)

    def __setattr__(self, name, value):
        raise AttributeError("Cyc is immutable")

    @staticmethod
    def of(value, order: int) -> "Cyc":
        """Embed an int or Fraction (or pass a Cyc through, checking order)."""
        if isinstance(value, Cyc):
            if value.order != order:
                raise ValueError("cyclotomic order mismatch")
            return value
        d = field_degree(order)
        c = [Fraction(0)] * d
        c[0] = Fraction(value)
        return Cyc(order, c)

    @staticmethod
    def zero(order: int) -> "Cyc":
        return Cyc.of(0, order)

    @staticmethod
    def one(order: int) -> "Cyc":
        return Cyc.of(1, order)

    @staticmethod
    def zeta(order: int, power: int = 1) -> "Cyc":
        """The root of unity z^power (power may be any integer)."""
        k = power % order
        return Cyc(order, _reduce_mod_phi(order, [0] * k + [1]))

    def _coerce(self, other):
        if isinstance(other, Cyc):
            if other.order != self.order:
                raise ValueError("cyclotomic order mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc.of(other, self.order)
        return None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("scalar has a nonzero root-of-unity part")
        return self.coeffs[0]

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyc(self.order, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyc(self.order, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return Cyc(self.order, _reduce_mod_phi(self.order, prod))

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        """Multiplicative inverse via the extended Euclidean algorithm
        in Q[x] against Phi_N (which is irreducible, so any nonzero
        scalar is a unit)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r0, r1 = phi, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(c for c in r1):
            q, rem = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _frac_poly_sub(s0, _frac_poly_mul(q, s1))
        # r0 is now a nonzero constant gcd
        lead = next(c for c in r0 if c)
        inv = [c / lead for c in s0]
        return Cyc(self.order, _reduce_mod_phi(self.order, inv))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Cyc.one(self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Cyc):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"Cyc({self.order}, {self})"

    def __str__(self):
        return print_scalar(self)


def _frac_poly_divmod(a, b):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    b = list(b)
    while b and b[-1] == 0:
        b.pop()
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / b[-1]
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _frac_poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1 or 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _frac_poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def print_scalar(c: Cyc) -> str:
    """Canonical form: rational coefficients in lowest terms, terms by
    ascending power of z, e.g. ``1/2 - z + 3*z^2``."""
    parts = []
    for k, a in enumerate(c.coeffs):
        if a == 0:
            continue
        mag = abs(a)
        if k == 0:
            body = str(mag)
        elif mag == 1:
            body = "z" if k == 1 else f"z^{k}"
        else:
            body = f"{mag}*z" if k == 1 else f"{mag}*z^{k}"
        if not parts:
            parts.append(body if a > 0 else "-" + body)
        else:
            parts.append(("+ " if a > 0 else "- ") + body)
    if not parts:
        return "0"
    return " ".join(parts)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([z*/^+-]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad = len(text) - len(stripped)
            raise ValueError(f"unexpected character {text[bad]!r} at position {bad}")
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        else:
            tokens.append((m.group(2), None, m.start(2)))
        pos = m.end()
    return tokens


def parse_scalar(text: str, order: int) -> Cyc:
    """Parse a scalar literal: signed sums of ``p``, ``p/q``, ``z``,
    ``z^k``, ``p*z^k``, ``p/q*z^k``.  Raises ValueError on malformed
    input, reporting the offending position."""
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty scalar literal")
    i = 0
    total = Cyc.zero(order)

    def fail(msg, idx):
        pos = tokens[idx][2] if idx < len(tokens) else len(text)
        raise ValueError(f"{msg} at position {pos}")

    first = True
    while i < len(tokens):
        if first:
            sign = 1
            if tokens[i][0] == "-":
                sign = -1
                i += 1
        else:
            if tokens[i][0] == "+":
                sign = 1
            elif tokens[i][0] == "-":
                sign = -1
            else:
                fail("expected '+' or '-'", i)
            i += 1
        if i >= len(tokens):
            fail("dangling sign", i)
        coeff = Fraction(1)
        has_coeff = False
        if tokens[i][0] == "int":
            num = tokens[i][1]
            i += 1
            coeff = Fraction(num)
            has_coeff = True
            if i < len(tokens) and tokens[i][0] == "/":
                i += 1
                if i >= len(tokens) or tokens[i][0] != "int":
                    fail("expected denominator", i)
                if tokens[i][1] == 0:
                    fail("zero denominator", i)
                coeff /= tokens[i][1]
                i += 1
        zpow = None
        if has_coeff and i < len(tokens) and tokens[i][0] == "*":
            i += 1
            if i >= len(tokens) or tokens[i][0] != "z":
                fail("expected z after '*'", i)
        if i < len(tokens) and tokens[i][0] == "z":
            i += 1
            zpow = 1
            if i < len(tokens) and tokens[i][0] == "^":
                i += 1
                if i >= len(tokens) or tokens[i][0] != "int":
                    fail("expected integer exponent", i)
                zpow = tokens[i][1]
                i += 1
        elif not has_coeff:
            fail("expected a term", i)
        term = Cyc.of(coeff, order)
        if zpow is not None:
            term = term * Cyc.zeta(order, zpow)
        total = total + (term if sign > 0 else -term)
        first = False
    return total
