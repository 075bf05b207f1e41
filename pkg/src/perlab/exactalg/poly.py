"""Exact polynomials over Q, univariate or binary homogeneous forms.

A univariate ``Poly`` stores coefficients of 1, z, z**2, ...; a homogeneous
``Poly`` of degree d stores the d+1 coefficients of Y**d, X*Y**(d-1), ...,
X**d, so that dehomogenizing at Y = 1 reuses the same list with z = X/Y.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from ..errors import FormMismatchError, ZeroPolynomialError
from . import zz

BigRat = Fraction

UNIVARIATE = "univariate"
HOMOGENEOUS = "homogeneous"


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c.strip())
    if isinstance(c, float):
        raise TypeError("floats are not exact; pass ints, Fractions or 'p/q' strings")
    return Fraction(c)


@dataclass(frozen=True)
class Poly:
    coeffs: tuple
    form: str = UNIVARIATE

    def __post_init__(self):
        cs = [_frac(c) for c in self.coeffs]
        if self.form == UNIVARIATE:
            while cs and cs[-1] == 0:
                cs.pop()
        elif self.form == HOMOGENEOUS:
            if not cs:
                raise FormMismatchError("a homogeneous form needs degree+1 coefficient slots")
        else:
            raise ValueError(f"unknown form {self.form!r}")
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- construction -----------------------------------------------------

    @classmethod
    def univariate(cls, coeffs: Iterable) -> "Poly":
        return cls(tuple(coeffs), UNIVARIATE)

    @classmethod
    def homogeneous(cls, coeffs: Iterable) -> "Poly":
        return cls(tuple(coeffs), HOMOGENEOUS)

    @classmethod
    def from_roots(cls, roots) -> "Poly":
        out = cls.univariate([1])
        for r in roots:
            out = out * cls.univariate([-_frac(r), 1])
        return out

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls.univariate([0] * k + [c])

    # -- basic properties -------------------------------------------------

    @property
    def is_homogeneous(self) -> bool:
        return self.form == HOMOGENEOUS

    @property
    def degree(self) -> int:
        """Degree; -1 for the univariate zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def lc(self) -> Fraction:
        for c in reversed(self.coeffs):
            if c:
                return c
        return Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"Poly({self.to_str()!r}, form={self.form!r})"

    def to_str(self) -> str:
        terms = []
        d = self.degree
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if self.is_homogeneous:
                mono = "*".join(
                    s for s in (_pow("X", i), _pow("Y", d - i)) if s
                )
            else:
                mono = _pow("z", i)
            if mono:
                coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
                terms.append(f"{coef}{mono}")
            else:
                terms.append(str(c))
        return " + ".join(reversed(terms)).replace("+ -", "- ") or "0"

    # -- integer views ----------------------------------------------------

    def denominator(self) -> int:
        return lcm(*(c.denominator for c in self.coeffs)) if self.coeffs else 1

    def integer_coeffs(self) -> list[int]:
        """Coefficients scaled by the common denominator, as ints."""
        den = self.denominator()
        return [int(c * den) for c in self.coeffs]

    def content_primitive(self) -> tuple[Fraction, list[int]]:
        """Split self = content * prim, prim integer-primitive with positive lc."""
        if self.is_zero():
            raise ZeroPolynomialError("content of the zero polynomial")
        den = self.denominator()
        ints = [int(c * den) for c in self.coeffs]
        lead = next(c for c in reversed(ints) if c)
        g = zz.content(ints)
        if lead < 0:
            g = -g
        return Fraction(g, den), [c // g for c in ints]

    def primitive(self) -> "Poly":
        """Integer-primitive representative with positive leading coefficient."""
        if self.is_zero():
            return self
        return Poly(tuple(self.content_primitive()[1]), self.form)

    def monic(self) -> "Poly":
        lc = self.lc
        if lc == 0:
            raise ZeroPolynomialError("monic of the zero polynomial")
        return Poly(tuple(c / lc for c in self.coeffs), self.form)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Poly", need_same_degree=False):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if self.form != other.form:
            raise FormMismatchError(f"cannot combine {self.form} with {other.form}")
        if need_same_degree and self.is_homogeneous and self.degree != other.degree:
            raise FormMismatchError(
                f"homogeneous degrees differ: {self.degree} vs {other.degree}"
            )

    def __add__(self, other):
        if not isinstance(other, Poly):
            if self.is_homogeneous:
                return NotImplemented
            other = Poly.univariate([other])
        self._check(other, need_same_degree=True)
        n = max(len(self), len(other))
        return Poly(tuple(self[i] + other[i] for i in range(n)), self.form)

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs), self.form)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            if self.is_homogeneous:
                return NotImplemented
            other = Poly.univariate([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = _frac(other)
            return Poly(tuple(c * x for x in self.coeffs), self.form)
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Poly((), UNIVARIATE)
        # Clear denominators and go through the integer kernel.
        ca, ia = _scaled_ints(self)
        cb, ib = _scaled_ints(other)
        prod = zz.mul(ia, ib)
        n = len(self) + len(other) - 1
        prod = prod + [0] * (n - len(prod))
        scale = ca * cb
        return Poly(tuple(Fraction(c) * scale for c in prod), self.form)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = Poly((1,), self.form) if self.is_homogeneous else Poly.univariate([1])
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other):
        return divrem(self, other)

    def __floordiv__(self, other):
        return divrem(self, other)[0]

    def __mod__(self, other):
        return divrem(self, other)[1]

    def derivative(self) -> "Poly":
        """d/dz for univariate, d/dX for homogeneous (degree drops by one)."""
        if self.is_homogeneous:
            if self.degree == 0:
                return Poly((0,), HOMOGENEOUS)
            return Poly(tuple(i * c for i, c in enumerate(self.coeffs))[1:], HOMOGENEOUS)
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs))[1:], UNIVARIATE)

    def __call__(self, x, y=None):
        if self.is_homogeneous:
            if y is None:
                raise FormMismatchError("a homogeneous form needs both X and Y")
            d = self.degree
            return sum(c * x**i * y ** (d - i) for i, c in enumerate(self.coeffs))
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- homogeneous helpers ---------------------------------------------

    def dehomogenize(self) -> tuple["Poly", int]:
        """(F(z, 1), multiplicity of the root at infinity)."""
        if not self.is_homogeneous:
            raise FormMismatchError("dehomogenize expects a homogeneous form")
        f = Poly.univariate(self.coeffs)
        if f.is_zero():
            return f, 0
        return f, self.degree - f.degree

    def swap(self) -> "Poly":
        """F(Y, X); exchanges the roles of 0 and infinity."""
        if not self.is_homogeneous:
            raise FormMismatchError("swap expects a homogeneous form")
        return Poly(tuple(reversed(self.coeffs)), HOMOGENEOUS)

    def homogenize(self, degree: int | None = None) -> "Poly":
        if self.is_homogeneous:
            return self
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise FormMismatchError("target degree below polynomial degree")
        d = max(d, 0)
        return Poly(tuple(self.coeffs) + (0,) * (d + 1 - len(self)), HOMOGENEOUS)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> list[str]:
        return [_frac_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence, form: str = UNIVARIATE) -> "Poly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(_frac(c) for c in data), form)


def _pow(var, k):
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _scaled_ints(p: Poly) -> tuple[Fraction, list[int]]:
    den = p.denominator()
    return Fraction(1, den), [int(c * den) for c in p.coeffs]


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division over Q: a = q*b + r with deg r < deg b."""
    a._check(b)
    if a.is_homogeneous:
        raise FormMismatchError("divrem is defined for univariate polynomials")
    if b.is_zero():
        raise ZeroPolynomialError("division by the zero polynomial")
    r = list(a.coeffs)
    db = b.degree
    lc = b.lc
    if len(r) - 1 < db:
        return Poly.univariate([]), a
    q = [Fraction(0)] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] / lc
        if c:
            q[i - db] = c
            for j, bj in enumerate(b.coeffs):
                r[i - db + j] -= c * bj
    return Poly.univariate(q), Poly.univariate(r[:db])


def poly_arith(a: Poly, b: Poly, op: str):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "divrem":
        return divrem(a, b)
    raise ValueError(f"unknown op {op!r}")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Gcd normalized to an integer-primitive polynomial with positive lc."""
    a._check(b)
    if a.is_zero() and b.is_zero():
        raise ZeroPolynomialError("gcd of two zero polynomials")
    if a.is_homogeneous:
        fa, ma = a.dehomogenize()
        fb, mb = b.dehomogenize()
        if a.is_zero():
            return b.primitive()
        if b.is_zero():
            return a.primitive()
        g = poly_gcd(fa, fb)
        k = min(ma, mb)
        return g.homogenize(g.degree + k)
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    g = zz.gcd(a.content_primitive()[1], b.content_primitive()[1])
    return Poly.univariate(g)


def squarefree_part(p: Poly) -> Poly:
    """p / gcd(p, p'), integer-primitive; same roots, all simple."""
    if p.is_zero():
        raise ZeroPolynomialError("squarefree part of the zero polynomial")
    if p.is_homogeneous:
        f, m = p.dehomogenize()
        s = squarefree_part(f) if f.degree > 0 else Poly.univariate([1])
        k = 1 if m else 0
        return s.homogenize(s.degree + k)
    ints = p.content_primitive()[1]
    return Poly.univariate(squarefree_part_zz(ints))


def squarefree_part_zz(a: list[int]) -> list[int]:
    if len(a) <= 2:
        return zz.primitive(a)[1]
    g = zz.gcd(a, zz.derivative(a))
    if len(g) == 1:
        return zz.primitive(a)[1]
    q = zz.exquo(a, g)
    return zz.primitive(q)[1]


def squarefree_decomposition_zz(a: list[int]) -> list[tuple[list[int], int]]:
    """Yun's algorithm on a primitive integer polynomial.

    Returns [(a_i, i)] with a = prod a_i**i up to sign; trivial a_i dropped.
    """
    a = zz.primitive(a)[1]
    if len(a) <= 2:
        return [(a, 1)] if len(a) == 2 else []
    b = zz.derivative(a)
    c = zz.gcd(a, b)
    w = zz.exquo(a, c)
    y = zz.exquo(b, c)
    out = []
    i = 1
    while len(w) > 1:
        z = zz.sub(y, zz.derivative(w))
        g = zz.gcd(w, z) if z else zz.primitive(w)[1]
        if len(g) > 1:
            out.append((g, i))
        w = zz.exquo(w, g)
        y = zz.exquo(z, g) if z else []
        i += 1
    return out


def max_multiplicity(p: Poly) -> int:
    """Largest root multiplicity of p (for forms, including the root at infinity)."""
    if p.is_zero():
        raise ZeroPolynomialError("multiplicity in the zero polynomial")
    inf = 0
    if p.is_homogeneous:
        p, inf = p.dehomogenize()
    best = inf
    if p.degree > 0:
        for _, i in squarefree_decomposition_zz(p.content_primitive()[1]):
            best = max(best, i)
    return best


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------


def bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def sylvester_matrix(f: Sequence, g: Sequence) -> list[list]:
    """Sylvester matrix for coefficient lists given highest degree first."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(f) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(g) + [0] * (size - n - 1 - i))
    return rows


def resultant(F: Poly, G: Poly) -> Fraction:
    """Resultant of two binary forms of their declared degrees.

    Zero exactly when F and G share a projective root.
    """
    if not (F.is_homogeneous and G.is_homogeneous):
        raise FormMismatchError("resultant expects homogeneous forms")
    cf, fi = _scaled_ints(F)
    cg, gi = _scaled_ints(G)
    m, n = F.degree, G.degree
    if m == 0 and n == 0:
        return Fraction(1)
    mat = sylvester_matrix(list(reversed(fi)), list(reversed(gi)))
    det = bareiss_det(mat)
    return Fraction(det) * cf**n * cg**m


def univariate_resultant(a: Poly, b: Poly) -> Fraction:
    """Resultant of univariate polynomials of their actual degrees (Euclid over Q)."""
    a._check(b)
    if a.is_homogeneous:
        raise FormMismatchError("univariate_resultant expects univariate input")
    if a.is_zero() or b.is_zero():
        return Fraction(0)
    result = Fraction(1)
    while True:
        m, n = a.degree, b.degree
        if n == 0:
            return result * b.lc**m
        if m == 0:
            return result * a.lc**n
        r = divrem(a, b)[1]
        if r.is_zero():
            return Fraction(0)
        if (m * n) % 2:
            result = -result
        result *= b.lc ** (m - r.degree)
        a, b = b, r
