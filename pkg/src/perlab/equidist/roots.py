"""Simultaneous (Aberth) root finding with a posteriori inclusion radii.

Roots are found in double precision, polished by Newton steps in mpmath and
then enclosed in Weierstrass discs: with W_i = p(z_i) / (lc * prod_{j!=i}
(z_i - z_j)), the discs |z - z_i| <= deg * |W_i| contain all roots, and a
disc disjoint from the others contains exactly one.

Two evaluators are provided. ``CoeffEvaluator`` works from exact
coefficients. ``DynamicalEvaluator`` evaluates Y*F_n - X*G_n by iterating
the map, which avoids the enormous coefficients of high iterates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from ..errors import NotSquarefreeError, PrecisionError
from ..exactalg import Poly
from ..exactalg import zz

CHUNK = 512


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    radii: np.ndarray
    precision_bits: int

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


# ---------------------------------------------------------------------------
# evaluators
# ---------------------------------------------------------------------------


class CoeffEvaluator:
    """Evaluation of a polynomial with rational coefficients."""

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        self.coeffs = cs
        self.degree = len(cs) - 1
        self.support = [k for k, c in enumerate(cs) if c != 0]
        # scale by a power of two so the largest coefficient is near 1
        top = max(_log2_abs(c) for c in cs if c)
        shift = int(math.floor(top))
        self.dense = np.array([_scaled_float(c, shift) for c in cs], dtype=complex)
        self.lc = cs[-1]

    def logderiv(self, z: np.ndarray) -> np.ndarray:
        """p'(z)/p(z) by Horner, on the reversed polynomial outside the unit disc."""
        n = self.degree
        out = np.empty_like(z)
        inside = np.abs(z) <= 1
        if inside.any():
            zm = z[inside]
            p, dp = _horner(self.dense, zm)
            with np.errstate(all="ignore"):
                out[inside] = dp / p
        if (~inside).any():
            zm = z[~inside]
            w = 1 / zm
            q, dq = _horner(self.dense[::-1], w)
            # p(z) = z^n q(1/z)  =>  p'/p = n/z - q'(w) w^2 / q(w)
            with np.errstate(all="ignore"):
                out[~inside] = n / zm - dq * w * w / q
        return out

    def _mp_coeffs(self, prec):
        cache = self.__dict__.setdefault("_mp", {})
        if prec not in cache:
            with mpmath.workprec(prec):
                cache[prec] = [_mpq(c) for c in self.coeffs]
        return cache[prec]

    def eval_mp(self, z, prec: int):
        cs = self._mp_coeffs(prec)
        with mpmath.workprec(prec):
            p = mpmath.mpc(0)
            dp = mpmath.mpc(0)
            z = mpmath.mpc(z)
            if len(self.support) * 8 < self.degree:
                for k in self.support:
                    p += cs[k] * z**k
                    if k:
                        dp += k * cs[k] * z ** (k - 1)
            else:
                for k in range(self.degree, -1, -1):
                    dp = dp * z + p
                    p = p * z + cs[k]
            return p, dp


def _horner(c: np.ndarray, z: np.ndarray):
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for a in c[::-1]:
        dp = dp * z + p
        p = p * z + a
    return p, dp


class DynamicalEvaluator:
    """Evaluation of Phi_n(z, 1) / scale with Phi_n = Y*F_n - X*G_n.

    F_n, G_n are the unreduced iterates (F, G) composed n times, which is what
    repeated evaluation of (F, G) produces.
    """

    def __init__(self, F, G, n: int, scale=1, degree: int | None = None, lc=None):
        self.F = [int(c) for c in F]
        self.G = [int(c) for c in G]
        self.d = len(self.F) - 1
        self.n = n
        self.scale = Fraction(scale)
        self.degree = degree
        self.lc = lc

    def _step(self, x, y, dx, dy, pw):
        d = self.d
        xs = [pw.ones_like(x)]
        ys = [pw.ones_like(y)]
        for _ in range(d):
            xs.append(xs[-1] * x)
            ys.append(ys[-1] * y)
        Fv = 0
        Gv = 0
        dF = 0
        dG = 0
        for i in range(d + 1):
            a, b = self.F[i], self.G[i]
            if a == 0 and b == 0:
                continue
            m = xs[i] * ys[d - i]
            dm = 0
            if i:
                dm = dm + i * xs[i - 1] * ys[d - i] * dx
            if d - i:
                dm = dm + (d - i) * xs[i] * ys[d - i - 1] * dy
            Fv = Fv + a * m
            Gv = Gv + b * m
            dF = dF + a * dm
            dG = dG + b * dm
        return Fv, Gv, dF, dG

    def logderiv(self, z: np.ndarray) -> np.ndarray:
        x = z.copy()
        y = np.ones_like(z)
        dx = np.ones_like(z)
        dy = np.zeros_like(z)
        for _ in range(self.n):
            x, y, dx, dy = self._step(x, y, dx, dy, np)
            s = np.maximum(np.abs(x), np.abs(y))
            s[s == 0] = 1
            x, y, dx, dy = x / s, y / s, dx / s, dy / s
        with np.errstate(all="ignore"):
            return (dx - y - z * dy) / (x - z * y)

    def eval_mp(self, z, prec: int):
        with mpmath.workprec(prec):
            z = mpmath.mpc(z)
            x, y, dx, dy = z, mpmath.mpc(1), mpmath.mpc(1), mpmath.mpc(0)
            for _ in range(self.n):
                x, y, dx, dy = self._step(x, y, dx, dy, _MpOnes)
            s = _mpq(self.scale)
            return (x - z * y) / s, (dx - y - z * dy) / s


class _MpOnes:
    @staticmethod
    def ones_like(v):
        return mpmath.mpc(1)


def _log2_abs(c: Fraction) -> float:
    return math.log2(abs(c.numerator)) - math.log2(c.denominator)


def _scaled_float(c: Fraction, shift: int) -> float:
    if c == 0:
        return 0.0
    v = c / (Fraction(2) ** shift) if shift >= 0 else c * (Fraction(2) ** (-shift))
    try:
        return float(v)
    except OverflowError:
        return math.copysign(math.inf, v)


def _mpq(c: Fraction):
    return mpmath.mpf(c.numerator) / c.denominator


# ---------------------------------------------------------------------------
# Aberth iteration
# ---------------------------------------------------------------------------


def initial_guesses(coeffs, seed_angle: float = 0.4) -> np.ndarray:
    """Circles from the upper convex hull of (k, log|a_k|)."""
    n = len(coeffs) - 1
    pts = [(k, _log2_abs(Fraction(c))) for k, c in enumerate(coeffs) if c != 0]
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    out = []
    first = pts[0][0]
    if first:
        # zero roots: a small circle well inside the others
        out.append(1e-3 * np.exp(1j * (2 * np.pi * np.arange(first) / first + seed_angle)))
    for (k0, l0), (k1, l1) in zip(hull, hull[1:]):
        m = k1 - k0
        u = 2.0 ** ((l0 - l1) / m)
        ang = 2 * np.pi * np.arange(m) / m + 2 * np.pi * k0 / n + seed_angle
        out.append(u * np.exp(1j * ang))
    return np.concatenate(out) if out else np.zeros(0, dtype=complex)


def _pair_sums(z: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """sum_{j != i} 1/(z_i - z_j) for i in rows."""
    out = np.empty(len(rows), dtype=complex)
    for s in range(0, len(rows), CHUNK):
        idx = rows[s : s + CHUNK]
        diff = z[idx, None] - z[None, :]
        diff[np.arange(len(idx)), idx] = np.inf
        with np.errstate(all="ignore"):
            out[s : s + CHUNK] = (1 / diff).sum(axis=1)
    return out


def aberth(ev, z0: np.ndarray, max_iter: int = 400) -> np.ndarray:
    z = z0.astype(complex).copy()
    active = np.arange(len(z))
    eps = np.finfo(float).eps
    for _ in range(max_iter):
        if len(active) == 0:
            break
        zl = z[active]
        ld = ev.logderiv(zl)
        S = _pair_sums(z, active)
        with np.errstate(all="ignore"):
            w = 1 / (ld - S)
        bad = ~np.isfinite(w)
        w[bad] = 0
        z[active] = zl - w
        done = (np.abs(w) <= 8 * eps * np.maximum(np.abs(zl), 1)) & ~bad
        active = active[~done]
    return z


def _log_prod_dist(z: np.ndarray) -> np.ndarray:
    """sum_{j != i} log|z_i - z_j| and min_{j != i} |z_i - z_j|."""
    n = len(z)
    lp = np.empty(n)
    mind = np.empty(n)
    for s in range(0, n, CHUNK):
        idx = np.arange(s, min(n, s + CHUNK))
        dist = np.abs(z[idx, None] - z[None, :])
        dist[np.arange(len(idx)), idx] = np.inf
        mind[idx] = dist.min(axis=1)
        dist[np.arange(len(idx)), idx] = 1.0
        with np.errstate(divide="ignore"):
            lp[idx] = np.log(dist).sum(axis=1)
    return lp, mind


def complex_roots(p: Poly | None = None, precision_bits: int = 64, evaluator=None,
                  check_squarefree: bool = True) -> RootSet:
    """All complex roots of a squarefree polynomial with inclusion radii.

    Each radius is at most 2**(-precision_bits/2); otherwise PrecisionError.
    Zero roots are split off exactly (radius 0).
    """
    if precision_bits > 96:
        raise ValueError("precision_bits above 96 is not representable in double output")
    if p is not None:
        coeffs = list(p.coeffs)
        if p.is_homogeneous:
            coeffs = list(Poly.univariate(coeffs).coeffs)
        if not coeffs:
            raise ValueError("zero polynomial has no root set")
        k0 = next(i for i, c in enumerate(coeffs) if c != 0) if evaluator is None else 0
        if k0 > 1:
            raise NotSquarefreeError("repeated root at 0")
        if check_squarefree and len(coeffs) - k0 > 2:
            _, ints = Poly.univariate(coeffs[k0:]).content_primitive()
            if len(zz.gcd(ints, zz.derivative(ints))) > 1:
                raise NotSquarefreeError("polynomial has repeated roots")
        core = coeffs[k0:]
        ev = evaluator or CoeffEvaluator(core)
        n = len(core) - 1
        lc = Fraction(core[-1])
        guesses = initial_guesses(core)
    else:
        if evaluator is None:
            raise ValueError("need a polynomial or an evaluator")
        ev = evaluator
        n = ev.degree
        lc = Fraction(ev.lc)
        k0 = 0
        guesses = np.exp(2j * np.pi * (np.arange(n) + 0.4) / n) if n else np.zeros(0, complex)
    zeros = np.zeros(k0, dtype=complex)
    if n == 0:
        return RootSet(zeros, np.zeros(k0), precision_bits)

    z = aberth(ev, guesses)
    prec = precision_bits + 40
    target = 2.0 ** (-precision_bits / 2)
    for attempt in range(3):
        zp = _polish(ev, z, prec)
        z_all = np.concatenate([zeros, zp]) if k0 else zp
        r_all = np.concatenate([np.zeros(k0), _radii(ev, zp, lc, prec)])
        if np.all(r_all <= target) and _disjoint(z_all, r_all):
            order = np.lexsort((z_all.imag, z_all.real))
            return RootSet(z_all[order], r_all[order], precision_bits)
        # Newton may have merged approximations; refine the unpolished ones jointly
        prec *= 2
        z = _aberth_mp(ev, z, prec)
    raise PrecisionError("root inclusion discs could not be certified within the precision budget")


def _aberth_mp(ev, z, prec, max_iter: int = 60):
    """Aberth iteration in mpmath, for clusters that double precision cannot separate."""
    z = np.array(z, dtype=complex)
    _, mind = _log_prod_dist(z)
    crowded = mind <= 1e-8 * np.maximum(1, np.abs(z))
    # separate collapsed approximations so the iteration can pull them apart
    k = np.flatnonzero(crowded)
    z[k] += 1e-4 * np.maximum(1, np.abs(z[k])) * np.exp(2j * np.pi * (np.arange(len(k)) + 0.3) / max(len(k), 1))
    with mpmath.workprec(prec):
        w = [mpmath.mpc(complex(v)) for v in z]
        n = len(w)
        tol = mpmath.mpf(2) ** (-(prec // 2))
        for _ in range(max_iter):
            biggest = 0
            for i in range(n):
                pv, dv = ev.eval_mp(w[i], prec)
                if pv == 0:
                    continue
                s = mpmath.fsum(1 / (w[i] - w[j]) for j in range(n) if j != i)
                corr = 1 / (dv / pv - s)
                w[i] -= corr
                biggest = max(biggest, abs(corr) / max(1, abs(w[i])))
            if biggest <= tol:
                break
        return np.array([complex(v) for v in w])


def _polish(ev, z, prec, max_steps: int = 12):
    out = np.empty_like(z)
    with mpmath.workprec(prec):
        tol = mpmath.mpf(2) ** (-(prec // 2))
        for i, zi in enumerate(z):
            w = mpmath.mpc(complex(zi))
            for _ in range(max_steps):
                pv, dv = ev.eval_mp(w, prec)
                if dv == 0:
                    break
                step = pv / dv
                w = w - step
                if abs(step) <= tol * max(1, abs(w)):
                    break
            out[i] = complex(w)
    return out


def _radii(ev, z, lc, prec):
    """Weierstrass inclusion radii of the nonzero roots z (zeros are split off)."""
    n = len(z)
    # the exact zero roots are split off, so the discs are those of the cofactor
    lp, _ = _log_prod_dist(z)
    out = np.empty(n)
    deg = n
    with mpmath.workprec(prec):
        lcm = abs(_mpq(lc))
        for i, zi in enumerate(z):
            pv, _ = ev.eval_mp(complex(zi), prec)
            lw = float(mpmath.log(abs(pv) + mpmath.mpf(2) ** (-prec))) - float(mpmath.log(lcm)) - lp[i]
            out[i] = deg * math.exp(min(lw, 700.0)) * (1 + 1e-9) + 1e-300
    return out


def _disjoint(z, r) -> bool:
    n = len(z)
    for s in range(0, n, CHUNK):
        idx = np.arange(s, min(n, s + CHUNK))
        dist = np.abs(z[idx, None] - z[None, :])
        gap = dist - r[idx, None] - r[None, :]
        gap[np.arange(len(idx)), idx] = np.inf
        if (gap <= 0).any():
            return False
    return True
