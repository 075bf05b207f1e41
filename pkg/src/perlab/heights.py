"""Weil and canonical heights on P^1(Q), and preperiodicity.

The canonical height is computed by telescoping

    hhat(P) = h(P) + sum_{n>=0} d^{-(n+1)} (h(f^{n+1} P) - d h(f^n P)),

truncated after N terms. Every term is bounded by a constant C depending only
on f, so the tail is at most C / ((d-1) d^N). Each term splits into an
archimedean part, evaluated in interval arithmetic on a normalized point,
and log g_n with g_n = gcd(F(a_n, b_n), G(a_n, b_n)), a divisor of the
resultant obtained from residues modulo a power of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv

from .dynamics import ProjPoint, RationalMap
from .errors import PrecisionError
from .exactalg import resultant

MAX_TERMS = 4000
MAX_PREC = 1 << 14


@dataclass(frozen=True)
class CanonicalHeightEstimate:
    """value +- error; ``error`` = tail bound + ``rounding`` (interval width)."""

    value: float
    error: float
    iterations: int
    telescope_constant: float
    rounding: float = 0.0


def weil_height(x) -> float:
    x = ProjPoint.from_value(x)
    p, q = x.coprime_ints()
    return _log_int(max(abs(p), abs(q)))


def _log_int(n: int) -> float:
    return math.log(n) if n > 0 else 0.0


# ---------------------------------------------------------------------------
# the constant C
# ---------------------------------------------------------------------------


def _solve_rational(m, rhs):
    """Gaussian elimination over Q for a nonsingular square system."""
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(m, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                c = a[r][col]
                a[r] = [x - c * y for x, y in zip(a[r], a[col])]
    return [row[-1] for row in a]


def bezout_forms(f: RationalMap):
    """Integer forms (u1, v1, u2, v2) of degree d-1 and R with

    u1 F + v1 G = R X^(2d-1),  u2 F + v2 G = R Y^(2d-1),  R = Res(F, G).
    """
    d = f.d
    F, G = f.f_ints, f.g_ints
    R = int(resultant(f.F, f.G))
    n = 2 * d
    # unknowns: u_0..u_{d-1}, v_0..v_{d-1}; equations: coefficient of X^k, k = 0..2d-1
    m = [[0] * n for _ in range(n)]
    for j in range(d):
        for i in range(d + 1):
            m[i + j][j] += F[i]
            m[i + j][d + j] += G[i]
    out = []
    for k in (n - 1, 0):
        rhs = [0] * n
        rhs[k] = R
        sol = _solve_rational(m, rhs)
        if any(s.denominator != 1 for s in sol):
            # scale to integers; the identity then holds with a multiple of R
            den = math.lcm(*[s.denominator for s in sol])
            raise AssertionError(f"non-integral Bezout solution (denominator {den})")
        out.append(([int(s) for s in sol[:d]], [int(s) for s in sol[d:]]))
    (u1, v1), (u2, v2) = out
    return u1, v1, u2, v2, R


def telescope_constant(f: RationalMap) -> float:
    """C with |h(f(x)) - d h(x)| <= C for every x in P^1(Q)."""
    up = max(sum(abs(c) for c in f.f_ints), sum(abs(c) for c in f.g_ints))
    u1, v1, u2, v2, _ = bezout_forms(f)
    luv = max(sum(map(abs, u1)) + sum(map(abs, v1)), sum(map(abs, u2)) + sum(map(abs, v2)))
    return max(math.log(up), math.log(luv), 0.0)


# ---------------------------------------------------------------------------
# canonical height
# ---------------------------------------------------------------------------


def _terms_needed(C: float, d: int, tol: float) -> int:
    if C == 0:
        return 0
    N = 0
    while C / ((d - 1) * d**N) > tol / 2:
        N += 1
        if N > MAX_TERMS:
            raise PrecisionError("tolerance needs too many telescoping terms")
    return N


def _gcd_logs(f: RationalMap, a: int, b: int, N: int, R: int) -> list[float]:
    """log g_n for n < N along the orbit of (a:b), coprime integers."""
    R = abs(R)
    if R == 1 or N == 0:
        return [0.0] * N
    M = R ** (N + 2)
    F, G = f.f_ints, f.g_ints
    d = f.d
    out = []
    a %= M
    b %= M
    for _ in range(N):
        Fa = sum(c * pow(a, i, M) * pow(b, d - i, M) for i, c in enumerate(F)) % M
        Ga = sum(c * pow(a, i, M) * pow(b, d - i, M) for i, c in enumerate(G)) % M
        g = math.gcd(Fa, Ga, R)
        out.append(math.log(g))
        M //= g
        a, b = (Fa // g) % M, (Ga // g) % M
    return out


def _iv_max(x, y):
    return iv.mpf([max(x.a, y.a), max(x.b, y.b)])


def _arch_sum(f: RationalMap, a: int, b: int, N: int, d: int):
    """sum_{n<N} d^{-(n+1)} arch_n as an interval, at the current precision."""
    F, G = f.f_ints, f.g_ints
    # normalized start point
    if abs(a) >= abs(b):
        al, be = iv.mpf(1), iv.mpf(b) / a
    else:
        al, be = iv.mpf(a) / b, iv.mpf(1)
    total = iv.mpf(0)
    w = iv.mpf(1)
    for _ in range(N):
        Fv = iv.mpf(0)
        Gv = iv.mpf(0)
        for i in range(d + 1):
            m = al**i * be ** (d - i)
            if F[i]:
                Fv += F[i] * m
            if G[i]:
                Gv += G[i] * m
        num = _iv_max(abs(Fv), abs(Gv))
        den = _iv_max(abs(al), abs(be))
        if num.a <= 0 or den.a <= 0:
            raise _NeedPrecision
        w = w / d
        total += w * (iv.log(num) - d * iv.log(den))
        if abs(Fv.mid) >= abs(Gv.mid):
            if 0 in Fv:
                raise _NeedPrecision
            al, be = iv.mpf(1), Gv / Fv
        else:
            if 0 in Gv:
                raise _NeedPrecision
            al, be = Fv / Gv, iv.mpf(1)
    return total


class _NeedPrecision(Exception):
    pass


def canonical_height(f: RationalMap, x, tol: float = 1e-9) -> CanonicalHeightEstimate:
    """Call-Silverman height of a rational point with certified error <= tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    x = ProjPoint.from_value(x)
    d = f.d
    C = telescope_constant(f)
    N = _terms_needed(C, d, tol)
    a, b = x.coprime_ints()
    h0 = _log_int(max(abs(a), abs(b)))
    tail = C / ((d - 1) * d**N) if N else 0.0
    if N == 0:
        return CanonicalHeightEstimate(h0, 0.0, 0, C, 0.0)
    R = int(resultant(f.F, f.G))
    glogs = _gcd_logs(f, a, b, N, R)
    gsum = sum(g / d ** (n + 1) for n, g in enumerate(glogs))
    prec = 128
    saved = iv.prec
    while prec <= MAX_PREC:
        iv.prec = prec
        try:
            arch = _arch_sum(f, a, b, N, d)
        except _NeedPrecision:
            prec *= 2
            continue
        finally:
            iv.prec = saved
        mid = float(arch.mid)
        # float conversion of endpoints plus the double rounding of the sums
        rounding = float(arch.delta) / 2 + 1e-15 * (abs(mid) + h0 + gsum + 1)
        if rounding <= tol / 2:
            value = h0 + mid - gsum
            return CanonicalHeightEstimate(value, tail + rounding, N, C, rounding)
        prec *= 2
    raise PrecisionError("interval evaluation did not reach the tolerance within the bit budget")


# ---------------------------------------------------------------------------
# preperiodicity
# ---------------------------------------------------------------------------


def is_preperiodic(f: RationalMap, x, max_steps: int = 100_000) -> bool:
    """Exact forward iteration until a repeat or the height cutoff 2C/(d-1) + h(x)."""
    x = ProjPoint.from_value(x)
    C = telescope_constant(f)
    cutoff = 2 * C / (f.d - 1) + weil_height(x)
    seen = set()
    y = x
    for _ in range(max_steps):
        if y in seen:
            return True
        seen.add(y)
        if weil_height(y) > cutoff + 1e-12:
            return False
        y = f(y)
    raise AssertionError("orbit neither cycled nor escaped the height cutoff")
