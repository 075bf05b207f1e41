"""Arithmetic in a simple number field Q[t]/(P) and in polynomial rings over it.

Elements are tuples of Fractions of length deg P (coefficients of 1, t, ...).
This is deliberately small: it exists so that algebraic periodic points can
be pushed through maps and tested against curves exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from . import zz
from .poly import Poly


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _qdivmod(a, b):
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _trim(r)
    q = [Fraction(0)] * (len(r) - db)
    lc = b[-1]
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] / lc
        if c:
            q[i - db] = c
            for j, bj in enumerate(b):
                r[i - db + j] -= c * bj
    return _trim(q), _trim(r[:db])


class NumberField:
    """Q(alpha) with alpha a root of the irreducible polynomial ``minpoly``."""

    def __init__(self, minpoly: Poly | Sequence):
        if isinstance(minpoly, Poly):
            minpoly = minpoly.coeffs
        mp = _trim(Fraction(c) for c in minpoly)
        if len(mp) < 2:
            raise ValueError("minimal polynomial must have positive degree")
        lc = mp[-1]
        self.modulus = [c / lc for c in mp]
        self.degree = len(mp) - 1
        # monic integral modulus: multiply through integer lists
        self._int_mod = None
        if all(c.denominator == 1 for c in self.modulus):
            self._int_mod = [int(c) for c in self.modulus]

    def __repr__(self):
        return f"NumberField({Poly.univariate(self.modulus).to_str()})"

    # elements ------------------------------------------------------------

    def element(self, coeffs) -> tuple:
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > self.degree:
            coeffs = _qdivmod(coeffs, self.modulus)[1]
        return tuple(coeffs + [Fraction(0)] * (self.degree - len(coeffs)))

    def const(self, c) -> tuple:
        return self.element([c])

    @property
    def zero(self):
        return self.const(0)

    @property
    def one(self):
        return self.const(1)

    @property
    def gen(self):
        return self.element([0, 1]) if self.degree > 1 else self.element([-self.modulus[0]])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        if self._int_mod is not None:
            return self._mul_int(a, b)
        return self.element(_qmul(_trim(a), _trim(b)))

    def _mul_int(self, a, b):
        da = _common_den(a)
        db = _common_den(b)
        ia = [int(x * da) for x in a]
        ib = [int(x * db) for x in b]
        prod = zz.mul(zz.trim(ia), zz.trim(ib))
        n = self.degree
        m = self._int_mod
        # reduce by the monic modulus, top down
        for i in range(len(prod) - 1, n - 1, -1):
            c = prod[i]
            if c:
                for j in range(n):
                    prod[i - n + j] -= c * m[j]
        den = da * db
        out = [Fraction(c, den) for c in prod[:n]]
        return tuple(out + [Fraction(0)] * (n - len(out)))

    def is_zero(self, a) -> bool:
        return not any(a)

    def inv(self, a):
        a = _trim(a)
        if not a:
            raise ZeroDivisionError("inverse of zero in a number field")
        # Extended Euclid keeping s_i * a = r_i mod the modulus.
        r0, r1 = list(self.modulus), a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _sub(s0, _qmul(q, s1))
            if not r1:
                raise ZeroDivisionError("element not invertible: modulus not irreducible")
        c = r1[0]
        return self.element([x / c for x in s1])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        out = self.one
        for _ in range(e):
            out = self.mul(out, a)
        return out

    # polynomials over the field ------------------------------------------

    def poly_eval(self, coeffs: Sequence, x):
        """Evaluate a polynomial with rational coefficients at a field element."""
        acc = self.zero
        for c in reversed(list(coeffs)):
            acc = self.add(self.mul(acc, x), self.const(c))
        return acc

    def kpoly_trim(self, p):
        p = list(p)
        while p and self.is_zero(p[-1]):
            p.pop()
        return p

    def kpoly_rem(self, a, b):
        a = self.kpoly_trim(a)
        b = self.kpoly_trim(b)
        if not b:
            raise ZeroDivisionError("division by zero polynomial over the field")
        db = len(b) - 1
        inv_lc = self.inv(b[-1])
        r = list(a)
        for i in range(len(r) - 1, db - 1, -1):
            c = self.mul(r[i], inv_lc)
            if not self.is_zero(c):
                for j, bj in enumerate(b):
                    r[i - db + j] = self.sub(r[i - db + j], self.mul(c, bj))
        return self.kpoly_trim(r[:db]) if len(r) > db else self.kpoly_trim(r)

    def kpoly_gcd(self, a, b):
        """Monic gcd in K[y]; coefficients listed lowest degree first."""
        a = self.kpoly_trim(a)
        b = self.kpoly_trim(b)
        while b:
            a, b = b, self.kpoly_rem(a, b)
        if not a:
            return []
        inv_lc = self.inv(a[-1])
        return [self.mul(c, inv_lc) for c in a]

    def embed(self, a, root: complex) -> complex:
        acc = 0j
        for c in reversed(a):
            acc = acc * root + float(c)
        return acc


def _common_den(a) -> int:
    den = 1
    for x in a:
        if x.denominator != 1:
            den = den * x.denominator // math.gcd(den, x.denominator)
    return den


def _sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    for i, c in enumerate(b):
        a[i] -= c
    return _trim(a)
