"""Endomorphisms of the projective line over Q and split product maps.

A map of degree d is a pair of binary forms (F, G) with integer, jointly
primitive coefficients and nonzero resultant; z = X/Y maps to F(z,1)/G(z,1).
Points are either rational (``ProjPoint``, which also covers infinity) or
algebraic (``AlgebraicPoint``: an irreducible minimal polynomial plus the
index of the root in a fixed numeric ordering).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .errors import DegreeCapError, MixedDegreeError, NotAMorphismError
from .exactalg import NumberField, Poly, factor_rational, max_multiplicity, resultant
from .exactalg import modp, zz

DEFAULT_DEGREE_CAP = 4096


def degree_cap() -> int:
    """Degree cap for iterates; PERLAB_DEGREE_CAP overrides the default 4096."""
    raw = os.environ.get("PERLAB_DEGREE_CAP")
    return int(raw) if raw else DEFAULT_DEGREE_CAP


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class ProjPoint:
    """A rational point of P^1, normalized to (x:1) or (1:0)."""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        x, y = Fraction(self.x), Fraction(self.y)
        if x == 0 and y == 0:
            raise ValueError("(0:0) is not a point of P^1")
        if y != 0:
            x, y = x / y, Fraction(1)
        else:
            x = Fraction(1)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_value(cls, v) -> "ProjPoint":
        if isinstance(v, ProjPoint):
            return v
        if v is None or (isinstance(v, str) and v.strip().lower() in ("inf", "infinity", "oo", "∞")):
            return cls(1, 0)
        if isinstance(v, str):
            return cls(Fraction(v.strip()), 1)
        return cls(Fraction(v), 1)

    @classmethod
    def infinity(cls) -> "ProjPoint":
        return cls(1, 0)

    @property
    def is_infinity(self) -> bool:
        return self.y == 0

    @property
    def value(self) -> Fraction | None:
        return None if self.is_infinity else self.x

    def coprime_ints(self) -> tuple[int, int]:
        """Coprime integer coordinates (p, q) with q >= 0."""
        if self.is_infinity:
            return 1, 0
        return self.x.numerator, self.x.denominator

    def __str__(self):
        return "inf" if self.is_infinity else str(self.x)


@dataclass(frozen=True)
class AlgebraicPoint:
    """A finite algebraic point: root number ``index`` of an irreducible polynomial.

    Roots are ordered by (real part, imaginary part) after rounding to 1e-10.
    """

    minpoly: Poly
    index: int = 0

    def __post_init__(self):
        mp = self.minpoly.primitive()
        if mp.degree < 1:
            raise ValueError("minimal polynomial must have positive degree")
        if not 0 <= self.index < mp.degree:
            raise ValueError("root index out of range")
        object.__setattr__(self, "minpoly", mp)

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def field(self) -> NumberField:
        return NumberField(self.minpoly)

    def approx(self) -> complex:
        return sorted_roots(self.minpoly)[self.index]

    def __str__(self):
        return f"root[{self.index}] of {self.minpoly.to_str()}"


Point = Union[ProjPoint, AlgebraicPoint]


def sorted_roots(p: Poly) -> list[complex]:
    from .equidist.roots import complex_roots

    roots = complex_roots(p).roots
    return sorted(roots, key=lambda z: (round(z.real, 10), round(z.imag, 10)))


# ---------------------------------------------------------------------------
# maps
# ---------------------------------------------------------------------------


def _pad(a, n):
    return list(a) + [0] * (n - len(a))


@dataclass(frozen=True)
class RationalMap:
    F: Poly
    G: Poly
    d: int

    @property
    def f_ints(self) -> list[int]:
        return [int(c) for c in self.F.coeffs]

    @property
    def g_ints(self) -> list[int]:
        return [int(c) for c in self.G.coeffs]

    @classmethod
    def polynomial(cls, coeffs: Sequence) -> "RationalMap":
        """z -> sum c_i z**i."""
        cs = Poly.univariate(coeffs)
        d = cs.degree
        return make_map(cs.homogenize(d), Poly.homogeneous([0] * d + [1]).swap())

    @classmethod
    def from_fraction(cls, num: Sequence, den: Sequence) -> "RationalMap":
        """z -> num(z)/den(z), homogenized at the larger degree."""
        n, m = Poly.univariate(num), Poly.univariate(den)
        d = max(n.degree, m.degree)
        return make_map(n.homogenize(d), m.homogenize(d))

    def __call__(self, p: Point):
        if isinstance(p, AlgebraicPoint):
            K = p.field()
            return K, apply_in_field(self, K, K.gen)
        a, b = p.x, p.y
        return ProjPoint(self.F(a, b), self.G(a, b))

    def to_json(self) -> dict:
        return {"F": [str(int(c)) for c in self.F.coeffs], "G": [str(int(c)) for c in self.G.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "RationalMap":
        return make_map(Poly.homogeneous(data["F"]), Poly.homogeneous(data["G"]))

    def label(self) -> str:
        f, _ = self.F.dehomogenize()
        g, _ = self.G.dehomogenize()
        if g.degree == 0:
            return (f * (1 / g.lc)).to_str()
        return f"({f.to_str()})/({g.to_str()})"

    def __str__(self):
        return self.label()


def make_map(F: Poly, G: Poly, check: bool = True) -> RationalMap:
    """Validate and normalize (F, G) into a RationalMap."""
    if not (F.is_homogeneous and G.is_homogeneous):
        raise NotAMorphismError("F and G must be homogeneous forms")
    if F.degree != G.degree:
        raise NotAMorphismError(f"degrees differ: {F.degree} vs {G.degree}")
    d = F.degree
    if d < 2:
        raise NotAMorphismError(f"degree {d} < 2")
    if check and resultant(F, G) == 0:
        raise NotAMorphismError("resultant is zero: F and G share a projective root")
    den = math.lcm(F.denominator(), G.denominator())
    fi = [int(c * den) for c in F.coeffs]
    gi = [int(c * den) for c in G.coeffs]
    g = math.gcd(zz.content(fi), zz.content(gi))
    lead = next(c for c in reversed(gi) if c) if any(gi) else next(c for c in reversed(fi) if c)
    if lead < 0:
        g = -g
    fi = [c // g for c in fi]
    gi = [c // g for c in gi]
    return RationalMap(Poly.homogeneous(fi), Poly.homogeneous(gi), d)


def _compose_forms(outer_f, outer_g, inner_f, inner_g, d_outer, d_inner):
    """Coefficient lists of (outer_f, outer_g) evaluated at (inner_f, inner_g)."""
    n_out = d_outer * d_inner + 1
    pf = [[1]]
    pg = [[1]]
    for _ in range(d_outer):
        pf.append(zz.mul(pf[-1], inner_f))
        pg.append(zz.mul(pg[-1], inner_g))
    F = [0] * n_out
    G = [0] * n_out
    for i in range(d_outer + 1):
        a, b = outer_f[i], outer_g[i]
        if a == 0 and b == 0:
            continue
        term = zz.mul(pf[i], pg[d_outer - i])
        for j, c in enumerate(term):
            F[j] += a * c
            G[j] += b * c
    return F, G


def compose(outer: RationalMap, inner: RationalMap) -> RationalMap:
    """outer o inner, of degree outer.d * inner.d."""
    F, G = _compose_forms(outer.f_ints, outer.g_ints, inner.f_ints, inner.g_ints, outer.d, inner.d)
    # a composition of morphisms is a morphism, so the resultant check is skipped
    return make_map(Poly.homogeneous(F), Poly.homogeneous(G), check=False)


@lru_cache(maxsize=256)
def _iterate_ints(f: RationalMap, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if n == 1:
        return tuple(f.f_ints), tuple(f.g_ints)
    Fp, Gp = _iterate_ints(f, n - 1)
    F, G = _compose_forms(f.f_ints, f.g_ints, list(Fp), list(Gp), f.d, f.d ** (n - 1))
    return tuple(F), tuple(G)


def iterate_ints(f: RationalMap, n: int, cap: int | None = None):
    cap = degree_cap() if cap is None else cap
    if n < 1:
        raise ValueError("iterate needs n >= 1")
    if f.d**n > cap:
        raise DegreeCapError(f"degree {f.d}^{n} = {f.d ** n} exceeds cap {cap}")
    F, G = _iterate_ints(f, n)
    return list(F), list(G)


def iterate(f: RationalMap, n: int, cap: int | None = None) -> RationalMap:
    """f composed with itself n times, degree d**n."""
    F, G = iterate_ints(f, n, cap)
    _assert_coprime(F, G)
    g = math.gcd(zz.content(F), zz.content(G))
    # same sign convention as make_map: last nonzero G coefficient positive
    lead = next(c for c in reversed(G) if c) if any(G) else next(c for c in reversed(F) if c)
    if lead < 0:
        g = -g
    F = [c // g for c in F]
    G = [c // g for c in G]
    return RationalMap(Poly.homogeneous(F), Poly.homogeneous(G), f.d**n)


def _assert_coprime(F, G):
    # Composition of morphisms is a morphism; this is a cheap sanity check.
    if F[-1] == 0 and G[-1] == 0:
        raise AssertionError("iterate has a common root at infinity")
    f = zz.trim(list(F))
    g = zz.trim(list(G))
    if len(f) > 1 and len(g) > 1 and not modp.coprime_certificate(f, g):
        if len(zz.gcd(f, g)) > 1:
            raise AssertionError("iterate acquired a common factor")


# ---------------------------------------------------------------------------
# points in number fields
# ---------------------------------------------------------------------------


def _form_at(coeffs, K: NumberField, v):
    """Value of a binary form (integer coefficient list) at (v : 1) in K."""
    return K.poly_eval(coeffs, v)


def apply_in_field(f: RationalMap, K: NumberField, v):
    """Image of the point (v:1) (or infinity when v is None); None means infinity."""
    if v is None:
        Fi, Gi = f.f_ints[-1], f.g_ints[-1]
        if Gi == 0:
            return None
        return K.const(Fraction(Fi, Gi))
    Fv = _form_at(f.f_ints, K, v)
    Gv = _form_at(f.g_ints, K, v)
    if K.is_zero(Gv):
        return None
    return K.div(Fv, Gv)


def ramification_in_field(f: RationalMap, K: NumberField, v) -> int:
    """Local degree of f at the point (v:1) of P^1(K), or at infinity if v is None."""
    d = f.d
    F, G = f.f_ints, f.g_ints
    if v is None:
        a, b = F[-1], G[-1]
        H = zz.trim([b * F[i] - a * G[i] for i in range(d + 1)])
        return d - (len(H) - 1)
    Fv = _form_at(F, K, v)
    Gv = _form_at(G, K, v)
    # H(z) = F(z,1) G(v) - G(z,1) F(v) vanishes at v to order e_f(v).
    H = [K.sub(K.mul(K.const(F[i]), Gv), K.mul(K.const(G[i]), Fv)) for i in range(d + 1)]
    H = K.kpoly_trim(H)
    mult = 0
    while H:
        # synthetic division by (z - v)
        q = [None] * (len(H) - 1)
        acc = H[-1]
        for i in range(len(H) - 2, -1, -1):
            q[i] = acc
            acc = K.add(H[i], K.mul(acc, v))
        if not K.is_zero(acc):
            break
        mult += 1
        H = K.kpoly_trim(q)
    return mult


def _as_field_point(x: Point):
    if isinstance(x, AlgebraicPoint):
        K = x.field()
        return K, K.gen
    x = ProjPoint.from_value(x)
    K = NumberField([-x.x, 1]) if not x.is_infinity else NumberField([0, 1])
    return K, (None if x.is_infinity else K.gen)


def ramification(f: RationalMap, x: Point) -> int:
    """Local multiplicity of f at x (kappa_1)."""
    K, v = _as_field_point(x)
    return ramification_in_field(f, K, v)


def kappa(f: RationalMap, n: int, x: Point) -> int:
    """Multiplicity of f**n at x."""
    return ramification(iterate(f, n), x)


@dataclass(frozen=True)
class MultiplicityRecord:
    n: int
    point: Point
    kappa: int


def preimage_form(f: RationalMap, n: int, a: ProjPoint, cap: int | None = None) -> Poly:
    """a_Y * F_n - a_X * G_n, whose roots are f^{-n}(a) with local multiplicities."""
    a = ProjPoint.from_value(a)
    F, G = iterate_ints(f, n, cap)
    p, q = a.coprime_ints()
    return Poly.homogeneous([q * u - p * w for u, w in zip(F, G)])


def kappa_minus(f: RationalMap, n: int, a) -> MultiplicityRecord:
    """max over y in f^{-n}(a) of the multiplicity of f**n at y."""
    if n < 1:
        raise ValueError("kappa_minus needs n >= 1")
    a = ProjPoint.from_value(a)
    form = preimage_form(f, n, a)
    return MultiplicityRecord(n=n, point=a, kappa=max_multiplicity(form))


# ---------------------------------------------------------------------------
# exceptional set
# ---------------------------------------------------------------------------


def _period_form(f: RationalMap, n: int) -> Poly:
    F, G = iterate_ints(f, n)
    # Y*F_n - X*G_n
    out = [0] * (len(F) + 1)
    for i, c in enumerate(F):
        out[i] += c
    for i, c in enumerate(G):
        out[i + 1] -= c
    return Poly.homogeneous(out)


def exceptional_set(f: RationalMap) -> tuple:
    """Maximal finite totally invariant set of f (at most two points).

    Such points are periodic of period 1 or 2 and fully ramified, so the
    search runs over degree <= 2 factors of the period-2 polynomial.
    """
    fac = factor_rational(_period_form(f, 2))
    candidates = []  # (point, field, value)
    if fac.y_power:
        K = NumberField([0, 1])
        candidates.append((ProjPoint.infinity(), K, None))
    for g, _ in fac.factors:
        if g.degree == 1:
            r = -g.coeffs[0] / g.coeffs[1]
            K = NumberField([-r, 1])
            candidates.append((ProjPoint(r, 1), K, K.gen))
        elif g.degree == 2:
            K = NumberField(g)
            candidates.append((AlgebraicPoint(g, 0), K, K.gen))
    full = [c for c in candidates if ramification_in_field(f, c[1], c[2]) == f.d]
    # Keep points whose image is again fully ramified; iterate to a fixed set.
    keep = list(full)
    changed = True
    while changed:
        changed = False
        for pt, K, v in list(keep):
            img = apply_in_field(f, K, v)
            if not any(_same_point(pt, K, img, other) for other in keep):
                keep.remove((pt, K, v))
                changed = True
    out = []
    for pt, K, v in keep:
        if isinstance(pt, AlgebraicPoint):
            out.extend([AlgebraicPoint(pt.minpoly, 0), AlgebraicPoint(pt.minpoly, 1)])
        else:
            out.append(pt)
    return tuple(sorted(out, key=_point_key))


def _point_key(p):
    if isinstance(p, ProjPoint):
        return (0, p.is_infinity, p.x)
    return (1, p.minpoly.coeffs, p.index)


def _same_point(src, K, img, other) -> bool:
    """Is the K-point ``img`` (the image of ``src``) one of the points of ``other``?"""
    opt = other[0]
    if img is None:
        return isinstance(opt, ProjPoint) and opt.is_infinity
    if isinstance(opt, ProjPoint):
        if opt.is_infinity:
            return False
        return K.is_zero(K.sub(img, K.const(opt.x)))
    # opt is a conjugate pair; img lies in it iff minpoly(img) = 0.
    return K.is_zero(K.poly_eval(list(opt.minpoly.coeffs), img))


def in_exceptional_set(f: RationalMap, a: ProjPoint) -> bool:
    a = ProjPoint.from_value(a)
    return any(isinstance(e, ProjPoint) and e == a for e in exceptional_set(f))


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductMap:
    components: tuple
    k: int
    d: int

    def guard_sets(self) -> tuple:
        """Per-factor exceptional sets; their cylinders lie in the product's exceptional set."""
        return tuple(exceptional_set(c) for c in self.components)

    def in_guard(self, point: Sequence) -> bool:
        return any(
            isinstance(p, ProjPoint) and p in g for p, g in zip(point, self.guard_sets())
        )

    def to_json(self) -> list:
        return [c.to_json() for c in self.components]


def product_map(maps: Sequence[RationalMap]) -> ProductMap:
    maps = tuple(maps)
    if not maps:
        raise ValueError("product_map needs at least one map")
    degs = {m.d for m in maps}
    if len(degs) != 1:
        raise MixedDegreeError(f"components have different degrees {sorted(degs)}; not polarized")
    return ProductMap(maps, len(maps), maps[0].d)
