"""Factorization of univariate polynomials over Q.

Pipeline: content and powers of z are split off, Yun's algorithm gives the
squarefree parts, and each squarefree part goes through

1. binomial shortcuts (z**M - 1 and z**M + 1 factor into cyclotomic
   polynomials),
2. an Eisenstein certificate on the polynomial or its reversal,
3. Zassenhaus: factor modulo a word-sized prime, Hensel-lift, recombine.

Recombination is pruned by the factor degrees that are compatible with the
distinct-degree patterns of several primes, which is what keeps the
periodic-point polynomials of degree ~256 tractable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import RecombinationLimitError, ZeroPolynomialError
from . import modp, zz
from .ntheory import divisors, mobius, small_prime_factors
from .poly import Poly, squarefree_decomposition_zz

PRIME_START = 1_000_000
PRUNING_PRIMES = 6
RECOMBINATION_CAP = 1 << 20


@dataclass(frozen=True)
class Factorization:
    """unit * prod(f**k for f, k in factors), times Y**y_power for forms."""

    unit: Fraction
    factors: tuple = ()
    y_power: int = 0
    homogeneous_degree: int | None = None

    def expand(self) -> Poly:
        out = Poly.univariate([self.unit])
        for f, k in self.factors:
            out = out * f**k
        if self.homogeneous_degree is not None:
            return out.homogenize(self.homogeneous_degree)
        return out

    def degrees(self) -> list[int]:
        """Irreducible factor degrees, repeated by multiplicity."""
        return sorted(f.degree for f, k in self.factors for _ in range(k))

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


@dataclass
class FactorStats:
    """Diagnostics from the last Zassenhaus run (not part of the result)."""

    prime: int = 0
    modular_factors: int = 0
    lift_exponent: int = 0
    subsets_tried: int = 0
    pruned_degrees: list = field(default_factory=list)


last_stats = FactorStats()


def factor_rational(p: Poly, cap: int = RECOMBINATION_CAP) -> Factorization:
    """Complete factorization over Q with integer-primitive irreducible factors.

    Homogeneous input is dehomogenized at Y = 1; the power of Y dividing the
    form is reported as ``y_power``.
    """
    if p.is_zero():
        raise ZeroPolynomialError("cannot factor the zero polynomial")
    y_power = 0
    hdeg = None
    if p.is_homogeneous:
        hdeg = p.degree
        p, y_power = p.dehomogenize()
    unit, ints = p.content_primitive()
    factors: dict[tuple, int] = {}
    k = 0
    while ints and ints[0] == 0:
        k += 1
        ints = ints[1:]
    if k:
        factors[(0, 1)] = k
    if len(ints) > 1:
        for part, mult in squarefree_decomposition_zz(ints):
            for f in factor_squarefree_zz(part, cap=cap):
                key = tuple(f)
                factors[key] = factors.get(key, 0) + mult
    items = sorted(factors.items(), key=lambda kv: (len(kv[0]), kv[0]))
    return Factorization(
        unit=unit,
        factors=tuple((Poly.univariate(f), m) for f, m in items),
        y_power=y_power,
        homogeneous_degree=hdeg,
    )


def factor_squarefree_zz(f: list[int], cap: int = RECOMBINATION_CAP) -> list[list[int]]:
    """Irreducible factors of a primitive squarefree f with f(0) != 0 allowed or not."""
    f = zz.primitive(f)[1]
    if len(f) <= 2:
        return [f]
    k = 0
    while f[0] == 0:
        f = f[1:]
        k += 1
    head = [[0, 1]] if k else []
    if len(f) <= 2:
        return head + ([f] if len(f) == 2 else [])
    cyc = _binomial_cyclotomic(f)
    if cyc is not None:
        return head + cyc
    if len(f) == 3:
        return head + _factor_quadratic(f)
    if eisenstein(f) or eisenstein(zz.reverse(f)):
        return head + [f]
    return head + sorted(_zassenhaus(f, cap), key=lambda g: (len(g), g))


# ---------------------------------------------------------------------------
# shortcuts
# ---------------------------------------------------------------------------


def _factor_quadratic(f):
    c, b, a = f
    disc = b * b - 4 * a * c
    if disc < 0:
        return [f]
    r = math.isqrt(disc)
    if r * r != disc:
        return [f]
    # Roots (-b +- r) / 2a.
    out = []
    for s in (1, -1):
        num, den = -b + s * r, 2 * a
        g = math.gcd(num, den)
        num, den = num // g, den // g
        if den < 0:
            num, den = -num, -den
        out.append([-num, den])
    return sorted(out)


def eisenstein(f: list[int]) -> bool:
    """True if some prime certifies irreducibility of f by Eisenstein's criterion."""
    lower = zz.content(f[:-1])
    if lower <= 1:
        return False
    for q in small_prime_factors(lower):
        if f[-1] % q and f[0] % (q * q):
            return True
    return False


def cyclotomic(m: int) -> list[int]:
    """The m-th cyclotomic polynomial via the Moebius product of z**d - 1."""
    num = [1]
    dens = []
    for d in divisors(m):
        mu = mobius(m // d)
        if mu == 1:
            num = zz.mul(num, [-1] + [0] * (d - 1) + [1])
        elif mu == -1:
            dens.append(d)
    for d in dens:
        num = _div_binomial(num, d)
    return num


def _div_binomial(a, d):
    # Exact division of a by z**d - 1.
    n = len(a) - 1
    q = [0] * (n - d + 1)
    r = list(a)
    for i in range(n, d - 1, -1):
        c = r[i]
        if c:
            q[i - d] = c
            r[i] = 0
            r[i - d] += c
    if any(r[:d]):
        raise ArithmeticError("not divisible by z^d - 1")
    return q


def _binomial_cyclotomic(f):
    """Factor z**M - 1 or z**M + 1 (up to sign) into cyclotomic polynomials."""
    if any(f[1:-1]) or abs(f[0]) != 1 or f[-1] != 1:
        return None
    m = len(f) - 1
    if f[0] == -1:
        orders = divisors(m)
    else:
        orders = [k for k in divisors(2 * m) if m % k]
    return sorted((cyclotomic(k) for k in orders), key=lambda g: (len(g), g))


# ---------------------------------------------------------------------------
# Zassenhaus
# ---------------------------------------------------------------------------


def _subset_sums(degs) -> int:
    bits = 1
    for d in degs:
        bits |= bits << d
    return bits


def _allowed_degrees(bits, n):
    return [d for d in range(1, n) if (bits >> d) & 1]


def _modular_data(f, n_primes=PRUNING_PRIMES):
    """Scan good primes; return candidates [(r, p)] and the degree bitset."""
    lc = f[-1]
    n = len(f) - 1
    allowed = None
    candidates = []
    for p in modp.primes_from(PRIME_START):
        if lc % p == 0:
            continue
        fp = modp.from_zz(f, p)
        if not modp.is_squarefree(fp, p):
            continue
        degs = modp.ddf_degrees(fp, p)
        bits = _subset_sums(degs)
        allowed = bits if allowed is None else allowed & bits
        candidates.append((len(degs), p))
        if len(degs) == 1 or allowed == (1 | (1 << n)):
            break
        if len(candidates) >= n_primes:
            break
    return candidates, allowed


def _hensel_step(m, f, g, h, s, t):
    M = m * m
    e = zz.mod_pos(zz.sub(f, zz.mul(g, h)), M)
    q, r = zz.divmod_exact(zz.mod_pos(zz.mul(s, e), M), h)
    q, r = zz.mod_pos(q, M), zz.mod_pos(r, M)
    u = zz.add(zz.mul(t, e), zz.mul(q, g))
    G = zz.mod_pos(zz.add(g, u), M)
    H = zz.mod_pos(zz.add(h, r), M)
    u = zz.add(zz.mul(s, G), zz.mul(t, H))
    b = zz.mod_pos(zz.sub(u, [1]), M)
    c, d = zz.divmod_exact(zz.mod_pos(zz.mul(s, b), M), H)
    c, d = zz.mod_pos(c, M), zz.mod_pos(d, M)
    u = zz.add(zz.mul(t, b), zz.mul(c, G))
    S = zz.mod_pos(zz.sub(s, d), M)
    T = zz.mod_pos(zz.sub(t, u), M)
    return G, H, S, T


def hensel_lift(p: int, f: list[int], factors: list[list[int]], l: int) -> list[list[int]]:
    """Lift monic f = lc * prod(factors) mod p to monic factors mod p**l."""
    r = len(factors)
    lc = f[-1]
    pl = p**l
    if r == 1:
        return [zz.mod_pos(zz.scale(f, pow(lc, -1, pl)), pl)]
    k = r // 2
    rounds = max(1, math.ceil(math.log2(l)))
    g = [lc % p]
    for fi in factors[:k]:
        g = zz.mod_pos(zz.mul(g, fi), p)
    h = factors[k]
    for fi in factors[k + 1:]:
        h = zz.mod_pos(zz.mul(h, fi), p)
    _, s, t = modp.gcdex(modp.from_zz(g, p), modp.from_zz(h, p), p)
    s, t = modp.to_zz(s), modp.to_zz(t)
    m = p
    for _ in range(rounds):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return hensel_lift(p, g, factors[:k], l) + hensel_lift(p, h, factors[k:], l)


def _subsets_with_degree(indices, degs, target):
    """Yield index tuples from ``indices`` whose degrees sum to ``target``."""
    idx = list(indices)
    suffix = [0] * (len(idx) + 1)
    for i in range(len(idx) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + degs[idx[i]]

    def rec(start, remaining, chosen):
        if remaining == 0:
            yield tuple(chosen)
            return
        if start >= len(idx) or suffix[start] < remaining:
            return
        for i in range(start, len(idx)):
            d = degs[idx[i]]
            if d <= remaining and suffix[i] >= remaining:
                chosen.append(idx[i])
                yield from rec(i + 1, remaining - d, chosen)
                chosen.pop()

    yield from rec(0, target, [])


def _zassenhaus(f, cap):
    global last_stats
    n = len(f) - 1
    candidates, allowed = _modular_data(f)
    stats = FactorStats(pruned_degrees=_allowed_degrees(allowed, n))
    last_stats = stats
    if not stats.pruned_degrees:
        return [f]
    r, p = min(candidates)
    stats.prime = p
    stats.modular_factors = r
    if r == 1:
        return [f]
    mod_factors = [modp.to_zz(g) for g in modp.factor_squarefree(modp.from_zz(f, p), p, seed=p)]
    lc = f[-1]
    half = n // 2
    bound = lc * math.comb(half, half // 2) * (math.isqrt(zz.l2_norm_sq(f)) + 1)
    l = 1
    while p**l <= 2 * bound:
        l += 1
    stats.lift_exponent = l
    pl = p**l
    lifted = hensel_lift(p, f, mod_factors, l)
    degs = [len(g) - 1 for g in lifted]
    allowed_set = set(stats.pruned_degrees)

    remaining = list(range(len(lifted)))
    rest = f
    found = []
    tried = 0
    targets = sorted(d for d in allowed_set if d <= n // 2)
    for t in targets:
        while 2 * t <= len(rest) - 1:
            b = rest[-1]
            c0 = b * rest[0]
            hit = None
            for S in _subsets_with_degree(remaining, degs, t):
                tried += 1
                if tried > cap:
                    stats.subsets_tried = tried
                    raise RecombinationLimitError(
                        f"recombination exceeded {cap} subsets "
                        f"({r} modular factors of a degree-{n} polynomial)"
                    )
                const = b
                for i in S:
                    const = const * lifted[i][0] % pl
                if const > pl // 2:
                    const -= pl
                if const == 0 or c0 % const:
                    continue
                G = [b]
                for i in S:
                    G = zz.mod_pos(zz.mul(G, lifted[i]), pl)
                G = zz.primitive(zz.mod_sym(G, pl))[1]
                q = zz.exquo(rest, G)
                if q is not None:
                    hit = (S, G, q)
                    break
            if hit is None:
                break
            S, G, q = hit
            found.append(G)
            rest = zz.primitive(q)[1]
            remaining = [i for i in remaining if i not in S]
    stats.subsets_tried = tried
    if len(rest) > 1:
        found.append(rest)
    return found
