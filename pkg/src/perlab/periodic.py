"""Periodic points and iterated preimages as exact root sets, with Galois-orbit statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .dynamics import ProjPoint, RationalMap, in_exceptional_set, iterate_ints, kappa_minus
from .errors import ExceptionalPointError, NotSquarefreeError
from .exactalg import Poly, factor_rational
from .exactalg import zz
from .exactalg.poly import squarefree_part_zz


@dataclass(frozen=True)
class PeriodicSpectrum:
    """Per_n as a set.

    ``set_polynomial`` is the squarefree finite part (in z = X/Y). ``orbit_degrees``
    lists Galois orbit sizes of all points, counting infinity as a rational point;
    ``finite_orbit_degrees`` omits it and sums to the degree of ``set_polynomial``.
    """

    n: int
    raw_degree: int
    set_polynomial: Poly
    includes_infinity: bool
    orbit_degrees: tuple
    count: int
    factors: tuple = field(default=(), repr=False)

    @property
    def finite_orbit_degrees(self) -> tuple:
        return tuple(sorted(f.degree for f in self.factors)) if self.factors else ()


@dataclass(frozen=True)
class PreimageSpectrum:
    n: int
    target: ProjPoint
    set_polynomial: Poly
    includes_infinity: bool
    orbit_degrees: tuple
    count: int
    factors: tuple = field(default=(), repr=False)


def period_form_ints(f: RationalMap, n: int, cap: int | None = None) -> list[int]:
    """Coefficients of Y*F_n - X*G_n (homogeneous, degree d^n + 1)."""
    F, G = iterate_ints(f, n, cap)
    out = [0] * (len(F) + 1)
    for i, c in enumerate(F):
        out[i] += c
    for i, c in enumerate(G):
        out[i + 1] -= c
    return out


def _set_data(form: list[int], factor: bool):
    """(squarefree finite part, infinity flag, finite factors) of a binary form."""
    finite = zz.trim(list(form))
    includes_inf = len(finite) < len(form)
    if len(finite) <= 1:
        sf = [1]
    else:
        sf = squarefree_part_zz(zz.primitive(finite)[1])
    p = Poly.univariate(sf)
    factors = ()
    if factor and p.degree > 0:
        fac = factor_rational(p)
        factors = tuple(g for g, _ in fac.factors)
    return p, includes_inf, factors


def periodic_polynomial(f: RationalMap, n: int, factor: bool = True, cap: int | None = None) -> PeriodicSpectrum:
    """Per_n(f) = {f^n(x) = x} without multiplicity."""
    if n < 1:
        raise ValueError("period must be >= 1")
    form = period_form_ints(f, n, cap)
    p, inf, factors = _set_data(form, factor)
    degs = sorted([g.degree for g in factors] + ([1] if inf else []))
    count = p.degree + (1 if inf else 0)
    return PeriodicSpectrum(n, len(form) - 1, p, inf, tuple(degs), count, factors)


def preimage_polynomial(f: RationalMap, n: int, a, factor: bool = True, cap: int | None = None) -> PreimageSpectrum:
    """f^{-n}(a) for a rational point a, without multiplicity."""
    if n < 1:
        raise ValueError("depth must be >= 1")
    a = ProjPoint.from_value(a)
    F, G = iterate_ints(f, n, cap)
    p_, q_ = a.coprime_ints()
    form = [q_ * u - p_ * w for u, w in zip(F, G)]
    p, inf, factors = _set_data(form, factor)
    degs = sorted([g.degree for g in factors] + ([1] if inf else []))
    count = p.degree + (1 if inf else 0)
    return PreimageSpectrum(n, a, p, inf, tuple(degs), count, factors)


def galois_spectrum(p: Poly) -> tuple:
    """Degrees of the irreducible rational factors of a squarefree polynomial.

    For a binary form a root at infinity counts as a factor of degree 1.
    """
    fac = factor_rational(p)
    if fac.y_power > 1 or any(k > 1 for _, k in fac.factors):
        raise NotSquarefreeError("galois_spectrum expects a squarefree polynomial")
    return tuple(sorted(fac.degrees() + [1] * fac.y_power))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitRow:
    n: int
    raw_degree: int
    count: int
    max_orbit: int
    proportion_large: float
    splitting_degree_lower_bound: int
    bound_holds: bool
    lambda_hat_running: float | None
    kappa_minus: int | None = None
    kappa_ok: bool | None = None


@dataclass(frozen=True)
class OrbitReport:
    rows: tuple
    lambda_hat: float | None
    lam: float
    n0: int | None
    kind: str = "periodic"

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.rows]


def fit_growth(ns, values) -> float | None:
    """exp of the least-squares slope of log(values) against n."""
    pts = [(n, math.log(v)) for n, v in zip(ns, values) if v > 0]
    if len(pts) < 2:
        return None
    mx = sum(n for n, _ in pts) / len(pts)
    my = sum(y for _, y in pts) / len(pts)
    sxx = sum((n - mx) ** 2 for n, _ in pts)
    sxy = sum((n - mx) * (y - my) for n, y in pts)
    return math.exp(sxy / sxx)


def _proportion_large(orbit_degrees, count, lam, n):
    thr = lam**n
    return sum(k for k in orbit_degrees if k >= thr) / count


def _least_n0(rows) -> int | None:
    n0 = None
    for r in reversed(rows):
        if not r.bound_holds:
            break
        n0 = r.n
    return n0


def _check_range(n_range) -> list[int]:
    ns = sorted(set(int(n) for n in n_range))
    if not ns:
        raise ValueError("empty n range")
    if ns[0] < 1:
        raise ValueError("n must be >= 1")
    return ns


def orbit_report(f: RationalMap, n_range: Iterable[int], lam: float, cap: int | None = None) -> OrbitReport:
    """Per-n orbit statistics of Per_n against the threshold lam**n."""
    if lam <= 1:
        raise ValueError("lambda must exceed 1")
    ns = _check_range(n_range)
    rows = []
    for n in ns:
        spec = periodic_polynomial(f, n, cap=cap)
        m = max(spec.orbit_degrees)
        prop = _proportion_large(spec.orbit_degrees, spec.count, lam, n)
        running = fit_growth([r.n for r in rows] + [n], [r.max_orbit for r in rows] + [m])
        rows.append(OrbitRow(n, spec.raw_degree, spec.count, m, prop, m, prop >= 1 - lam**-n, running))
    lam_hat = fit_growth([r.n for r in rows], [r.max_orbit for r in rows])
    return OrbitReport(tuple(rows), lam_hat, lam, _least_n0(rows), "periodic")


def preimage_report(f: RationalMap, a, n_range: Iterable[int], lam: float, cap: int | None = None) -> OrbitReport:
    """Orbit statistics of f^{-n}(a); refuses points of the exceptional set."""
    if lam <= 1:
        raise ValueError("lambda must exceed 1")
    a = ProjPoint.from_value(a)
    if in_exceptional_set(f, a):
        raise ExceptionalPointError(f"a = {a} lies in the exceptional set of {f}; the orbit bound does not apply")
    ns = _check_range(n_range)
    rows = []
    for n in ns:
        spec = preimage_polynomial(f, n, a, cap=cap)
        m = max(spec.orbit_degrees)
        prop = _proportion_large(spec.orbit_degrees, spec.count, lam, n)
        km = kappa_minus(f, n, a).kappa
        running = fit_growth([r.n for r in rows] + [n], [r.max_orbit for r in rows] + [m])
        rows.append(OrbitRow(
            n, f.d**n, spec.count, m, prop, m, prop >= 1 - lam**-n, running,
            kappa_minus=km, kappa_ok=km <= lam**n,
        ))
    lam_hat = fit_growth([r.n for r in rows], [r.max_orbit for r in rows])
    return OrbitReport(tuple(rows), lam_hat, lam, _least_n0(rows), "preimage")
