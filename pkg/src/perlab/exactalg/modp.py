"""Polynomial arithmetic over GF(p) for word-sized primes, on numpy int64.

Arrays are little-endian coefficient vectors with no trailing zeros.  The
primes used here stay below 2**21 so that convolutions and matrix products
of length up to ~2 million never overflow int64.
"""

from __future__ import annotations

import numpy as np

_INT64_LIMIT = 1 << 62


def _check_size(n, p):
    if n * p * p >= _INT64_LIMIT:
        raise OverflowError(f"length {n} too large for exact int64 work mod {p}")


def trim(a):
    nz = np.flatnonzero(a)
    if nz.size == 0:
        return a[:0]
    return a[: nz[-1] + 1]


def from_zz(a, p):
    return trim(np.array([c % p for c in a], dtype=np.int64))


def to_zz(a):
    return [int(c) for c in a]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_from(start: int):
    n = start
    while True:
        if is_prime(n):
            yield n
        n += 1


def monic(a, p):
    if a.size == 0:
        return a
    inv = pow(int(a[-1]), -1, p)
    return a * inv % p


def mul(a, b, p):
    if a.size == 0 or b.size == 0:
        return a[:0]
    _check_size(min(a.size, b.size), p)
    return trim(np.convolve(a, b) % p)


def sub(a, b, p):
    n = max(a.size, b.size)
    out = np.zeros(n, dtype=np.int64)
    out[: a.size] += a
    out[: b.size] -= b
    return trim(out % p)


def divmod_p(a, b, p):
    if b.size == 0:
        raise ZeroDivisionError("division by zero polynomial mod p")
    db = b.size - 1
    if a.size - 1 < db:
        return a[:0], a.copy()
    r = a.copy()
    inv = pow(int(b[-1]), -1, p)
    q = np.zeros(a.size - db, dtype=np.int64)
    for i in range(a.size - 1, db - 1, -1):
        c = int(r[i]) * inv % p
        if c:
            q[i - db] = c
            r[i - db: i + 1] = (r[i - db: i + 1] - c * b) % p
    return trim(q), trim(r[:db])


def rem(a, b, p):
    db = b.size - 1
    if a.size - 1 < db:
        return a
    r = a.copy()
    inv = pow(int(b[-1]), -1, p)
    for i in range(a.size - 1, db - 1, -1):
        c = int(r[i]) * inv % p
        if c:
            r[i - db: i + 1] = (r[i - db: i + 1] - c * b) % p
    return trim(r[:db])


def gcd(a, b, p):
    a, b = trim(a % p), trim(b % p)
    while b.size:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def gcdex(a, b, p):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = trim(a % p), trim(b % p)
    one = np.array([1], dtype=np.int64)
    s0, s1 = one, one[:0]
    t0, t1 = one[:0], one
    while r1.size:
        q, r = divmod_p(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    inv = pow(int(r0[-1]), -1, p)
    return r0 * inv % p, s0 * inv % p, t0 * inv % p


class ModRing:
    """GF(p)[x]/(g) with a precomputed reduction matrix.

    Row j of ``_red`` holds x**(n+j) mod g, so a product of two reduced
    elements reduces with one matrix-vector product instead of a Python loop.
    """

    def __init__(self, g, p):
        g = monic(trim(g % p), p)
        self.g = g
        self.p = p
        self.n = n = g.size - 1
        if n < 1:
            raise ValueError("modulus must have positive degree")
        _check_size(n, p)
        red = np.zeros((max(n - 1, 1), n), dtype=np.int64)
        row = (-g[:n]) % p
        red[0] = row
        for j in range(1, n - 1):
            top = row[-1]
            row = np.concatenate(([0], row[:-1]))
            if top:
                row = (row + top * red[0]) % p
            red[j] = row
        self._red = red

    def reduce(self, c):
        n = self.n
        if c.size <= n:
            return trim(c % self.p)
        low = np.zeros(n, dtype=np.int64)
        low[: min(n, c.size)] = c[:n]
        high = c[n:] % self.p
        if high.size > self._red.shape[0]:
            return rem(trim(c % self.p), self.g, self.p)
        return trim((low + high @ self._red[: high.size]) % self.p)

    def mul(self, a, b):
        if a.size == 0 or b.size == 0:
            return a[:0]
        return self.reduce(np.convolve(a, b))

    def pow(self, a, e):
        result = np.array([1], dtype=np.int64)
        base = self.reduce(a)
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def frobenius_matrix(self):
        """Rows x**(i p) mod g for i < n, padded to length n."""
        n, p = self.n, self.p
        Q = np.zeros((n, n), dtype=np.int64)
        Q[0, 0] = 1
        if n == 1:
            return Q
        xp = self.pow(np.array([0, 1], dtype=np.int64), p)
        cur = np.array([1], dtype=np.int64)
        for i in range(1, n):
            cur = self.mul(cur, xp)
            Q[i, : cur.size] = cur
        return Q


def _frob_apply(a, Q, p):
    return trim(a @ Q[: a.size] % p) if a.size else a


def ddf(g, p):
    """Distinct-degree factorization of a monic squarefree g.

    Returns (frobenius matrix, [(product of all degree-d factors, d), ...]).
    """
    g = monic(trim(g % p), p)
    n = g.size - 1
    if n <= 1:
        return None, [(g, 1)] if n == 1 else []
    ring = ModRing(g, p)
    Q = ring.frobenius_matrix()
    x = np.array([0, 1], dtype=np.int64)
    h = x
    rest = g
    out = []
    d = 0
    while rest.size - 1 >= 2 * (d + 1):
        d += 1
        h = _frob_apply(h, Q, p)
        t = rem(sub(h, x, p), rest, p)
        f = gcd(rest, t, p)
        if f.size > 1:
            out.append((f, d))
            rest = divmod_p(rest, f, p)[0]
            rest = monic(rest, p)
    if rest.size > 1:
        out.append((rest, rest.size - 1))
    return Q, out


def ddf_degrees(g, p):
    """Multiset of irreducible-factor degrees of squarefree g mod p."""
    _, parts = ddf(g, p)
    degs = []
    for f, d in parts:
        degs.extend([d] * ((f.size - 1) // d))
    return sorted(degs)


def edf(f, d, p, Q, rng):
    """Cantor-Zassenhaus split of monic f whose irreducible factors all have degree d.

    ``Q`` is the Frobenius matrix of some multiple of f (the DDF modulus).
    """
    n = f.size - 1
    if n == d:
        return [f]
    ring = ModRing(f, p)
    half = (p - 1) // 2
    one = np.array([1], dtype=np.int64)
    while True:
        a = trim(rng.integers(0, p, size=n, dtype=np.int64))
        if a.size < 2:
            continue
        t = a
        cur = a
        for _ in range(d - 1):
            cur = rem(_frob_apply(cur, Q, p), f, p)
            t = ring.mul(t, cur)
        b = ring.pow(t, half)
        g = gcd(f, sub(b, one, p), p)
        if 0 < g.size - 1 < n:
            other = monic(divmod_p(f, g, p)[0], p)
            return edf(g, d, p, Q, rng) + edf(other, d, p, Q, rng)


def factor_squarefree(g, p, seed=0):
    """Monic irreducible factors of squarefree g over GF(p), sorted by degree."""
    g = monic(trim(g % p), p)
    if g.size <= 2:
        return [g] if g.size == 2 else []
    Q, parts = ddf(g, p)
    rng = np.random.default_rng(seed)
    out = []
    for f, d in parts:
        out.extend(edf(f, d, p, Q, rng))
    out.sort(key=lambda a: (a.size, a.tolist()))
    return out


def is_squarefree(g, p):
    g = trim(g % p)
    if g.size <= 2:
        return True
    dg = trim(np.arange(g.size, dtype=np.int64)[1:] * g[1:] % p)
    if dg.size == 0:
        return False
    return gcd(g, dg, p).size == 1


def coprime_certificate(a, b, tries=2):
    """True if a and b (integer lists) are certainly coprime over Q.

    A gcd of degree 0 modulo a prime not dividing lc(a) proves coprimality.
    False means "not certified", not "not coprime".
    """
    lc = a[-1] * b[-1]
    tried = 0
    for p in primes_from(1_000_003):
        if lc % p == 0:
            continue
        g = gcd(from_zz(a, p), from_zz(b, p), p)
        if g.size == 1:
            return True
        tried += 1
        if tried >= tries:
            return False
