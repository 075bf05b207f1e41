"""Periodic points of split maps on curves in P^1 x P^1, and the degree-growth identity."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dynamics import ProductMap
from .errors import NotSquarefreeError
from .exactalg import NumberField, Poly, poly_gcd
from .periodic import periodic_polynomial


def degree_growth(e: int, q: int, d: int, n: int) -> int:
    """e * (d^n + 1)^q."""
    if e < 1 or q < 0 or d < 2 or n < 1:
        raise ValueError("need e >= 1, q >= 0, d >= 2, n >= 1")
    return e * (d**n + 1) ** q


@dataclass(frozen=True)
class BihomCurve:
    """Z(x, y) = sum c[i][j] x^i y^j, of bidegree (e1, e2) in the affine charts x, y."""

    coeffs: tuple  # coeffs[i][j], i <= e1, j <= e2
    bidegree: tuple

    def __post_init__(self):
        e1, e2 = self.bidegree
        rows = [tuple(Fraction(c) for c in row) for row in self.coeffs]
        if len(rows) != e1 + 1 or any(len(r) != e2 + 1 for r in rows):
            raise ValueError(f"coefficient matrix must be {e1 + 1} x {e2 + 1}")
        if not any(c for r in rows for c in r):
            raise ValueError("curve polynomial is zero")
        if not any(rows[e1]) or not any(r[e2] for r in rows):
            raise ValueError("stated bidegree exceeds the actual bidegree")
        object.__setattr__(self, "coeffs", tuple(rows))
        _check_squarefree(self)

    @property
    def total_degree(self) -> int:
        return self.bidegree[0] + self.bidegree[1]

    @classmethod
    def from_json(cls, data: dict) -> "BihomCurve":
        return cls(tuple(tuple(Fraction(c) for c in row) for row in data["coeffs"]), tuple(data["bidegree"]))

    def to_json(self) -> dict:
        return {"bidegree": list(self.bidegree), "coeffs": [[f"{c.numerator}/{c.denominator}" for c in r] for r in self.coeffs]}

    def in_y(self, K: NumberField, alpha) -> list:
        """Z(alpha, y) as a list of K-coefficients in y; alpha None means x = infinity."""
        e1, e2 = self.bidegree
        if alpha is None:
            return [K.const(self.coeffs[e1][j]) for j in range(e2 + 1)]
        out = []
        for j in range(e2 + 1):
            out.append(K.poly_eval([self.coeffs[i][j] for i in range(e1 + 1)], alpha))
        return out

    def x_slice(self, y0) -> Poly:
        return Poly.univariate([sum(self.coeffs[i][j] * Fraction(y0) ** j for j in range(len(self.coeffs[i]))) for i in range(len(self.coeffs))])

    def y_slice(self, x0) -> Poly:
        e1, e2 = self.bidegree
        return Poly.univariate([sum(self.coeffs[i][j] * Fraction(x0) ** i for i in range(e1 + 1)) for j in range(e2 + 1)])


def _check_squarefree(Z: BihomCurve, tries: int = 4):
    """Z is squarefree if some pair of generic slices is."""
    rng = random.Random(12345)
    for _ in range(tries):
        a, b = rng.randint(-1000, 1000), rng.randint(-1000, 1000)
        ok = True
        for sl, deg in ((Z.y_slice(a), Z.bidegree[1]), (Z.x_slice(b), Z.bidegree[0])):
            if sl.degree != deg:
                ok = False
                break
            if sl.degree > 0 and poly_gcd(sl, sl.derivative()).degree > 0:
                ok = False
                break
        if ok:
            return
    raise NotSquarefreeError("curve polynomial is not squarefree (or slices are degenerate)")


def diagonal() -> BihomCurve:
    return BihomCurve(((0, -1), (1, 0)), (1, 1))


def vertical(x0) -> BihomCurve:
    """{x = x0}, bidegree (1, 0)."""
    return BihomCurve(((-Fraction(x0),), (1,)), (1, 0))


@dataclass(frozen=True)
class CurveCount:
    count: int
    fibers: tuple = field(default=())  # x-points (as factor or 'inf') whose whole fiber lies on Z
    per_factor: tuple = field(default=())


def _rem_horner(K: NumberField, phi: Poly, z: list) -> list:
    """s * phi(y) mod z(y) for some nonzero s in K, without inversions."""
    e = len(z) - 1
    lc = z[-1]
    r = [K.zero] * e
    s = K.one
    for c in reversed(phi.coeffs):
        # r <- y*r + s*c, then clear the y^e term with the leading coefficient
        top = r[-1] if e else K.zero
        r = [K.zero] + r[:-1] if e else []
        if e:
            r[0] = K.add(r[0], K.mul(s, K.const(c)))
        if e and not K.is_zero(top):
            r = [K.sub(K.mul(lc, ri), K.mul(top, zi)) for ri, zi in zip(r, z)]
            s = K.mul(s, lc)
    return K.kpoly_trim(r)


def _prem(K: NumberField, a: list, b: list) -> list:
    a = list(a)
    lb = b[-1]
    while len(a) >= len(b) and a:
        la = a[-1]
        shift = len(a) - len(b)
        a = [K.mul(lb, x) for x in a]
        for j, bj in enumerate(b):
            a[shift + j] = K.sub(a[shift + j], K.mul(la, bj))
        a = K.kpoly_trim(a)
    return a


def _gcd_degree(K: NumberField, a: list, b: list) -> int:
    """Degree of gcd(a, b) in K[y] via a pseudo-remainder sequence."""
    a, b = K.kpoly_trim(a), K.kpoly_trim(b)
    while b:
        a, b = b, _prem(K, a, b)
    return len(a) - 1 if a else -1


def _count_over(K, alpha, Z: BihomCurve, phi_g: Poly, g_inf: bool):
    """Points (alpha, beta) on Z with beta in Per_n(g); also whether the fiber is contained in Z."""
    zy = K.kpoly_trim(Z.in_y(K, alpha))
    if not zy:
        return phi_g.degree + (1 if g_inf else 0), True
    finite = 0
    if len(zy) > 1 and phi_g.degree > 0:
        r = _rem_horner(K, phi_g, zy)
        finite = _gcd_degree(K, zy, r) if r else len(zy) - 1
    # beta = infinity lies on Z iff the y^{e2} coefficient vanishes
    at_inf = g_inf and len(zy) - 1 < Z.bidegree[1]
    return finite + (1 if at_inf else 0), False


def count_periodic_on_curve(fg: ProductMap, Z: BihomCurve, n: int, details: bool = False, cap: int | None = None):
    """|(Per_n(f) x Per_n(g)) on Z|, exactly, by gcds over the field of each orbit."""
    if fg.k != 2:
        raise ValueError("count_periodic_on_curve needs a product of two maps")
    f, g = fg.components
    sf = periodic_polynomial(f, n, cap=cap)
    sg = periodic_polynomial(g, n, factor=False, cap=cap)
    total = 0
    fibers = []
    per = []
    for P in sf.factors:
        K = NumberField(P)
        c, full = _count_over(K, K.gen, Z, sg.set_polynomial, sg.includes_infinity)
        total += c * P.degree
        per.append((P.to_str(), P.degree, c))
        if full:
            fibers.append(P.to_str())
    if sf.includes_infinity:
        K = NumberField([0, 1])
        c, full = _count_over(K, None, Z, sg.set_polynomial, sg.includes_infinity)
        total += c
        per.append(("inf", 1, c))
        if full:
            fibers.append("inf")
    if details:
        return CurveCount(total, tuple(fibers), tuple(per))
    return total


@dataclass(frozen=True)
class BoundCheck:
    n: int
    count: int
    bound: float
    passed: bool
    margin: float


def bound_check(fg: ProductMap, Z: BihomCurve, n: int, c: float = 2.0, cap: int | None = None) -> BoundCheck:
    """count <= c * e * d^n (q = 1); a failure is a result, not an error."""
    count = count_periodic_on_curve(fg, Z, n, cap=cap)
    bound = c * Z.total_degree * fg.d**n
    return BoundCheck(n, count, bound, count <= bound, bound - count)


def curve_from_matrix(m: Sequence[Sequence], bidegree=None) -> BihomCurve:
    rows = tuple(tuple(Fraction(v) for v in r) for r in m)
    bd = tuple(bidegree) if bidegree else (len(rows) - 1, len(rows[0]) - 1)
    return BihomCurve(rows, bd)
