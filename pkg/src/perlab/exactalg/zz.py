"""Dense polynomial kernels over the integers.

Polynomials are plain lists of Python ints, lowest degree first, with no
trailing zeros; ``[]`` is the zero polynomial.  Everything heavier in the
package (iteration of maps, Hensel lifting, trial division) funnels through
these helpers, so they avoid Fraction entirely.
"""

from __future__ import annotations

import math
from functools import reduce
from itertools import islice

# Below this many coefficient products the schoolbook loop beats packing.
_KRONECKER_THRESHOLD = 400


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a) -> int:
    return len(a) - 1


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def sub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return trim(out)


def neg(a):
    return [-c for c in a]


def scale(a, c):
    if c == 0:
        return []
    return [c * x for x in a]


def shift(a, k):
    """Multiply by x**k."""
    return [0] * k + list(a) if a else []


def max_norm(a) -> int:
    return max((abs(c) for c in a), default=0)


def l2_norm_sq(a) -> int:
    return sum(c * c for c in a)


def _mul_schoolbook(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pack(coeffs, nbytes):
    # Nonnegative coefficients only.
    return int.from_bytes(b"".join(c.to_bytes(nbytes, "little") for c in coeffs), "little")


def _mul_kronecker(a, b):
    n_out = len(a) + len(b) - 1
    bound = max_norm(a) * max_norm(b) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    nbytes = (bits + 7) // 8
    half = 1 << (8 * nbytes - 1)

    def split(p):
        pos = _pack([c if c > 0 else 0 for c in p], nbytes)
        negp = _pack([-c if c < 0 else 0 for c in p], nbytes)
        return pos - negp

    prod = split(a) * split(b)
    # Offset every digit by 2**(8*nbytes-1) so the signed digits become
    # nonnegative and can be read straight off the byte string.
    offset = int.from_bytes((half.to_bytes(nbytes, "little")) * n_out, "little")
    raw = (prod + offset).to_bytes(nbytes * n_out + 1, "little")
    out = [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(n_out)
    ]
    return out


def mul(a, b):
    if not a or not b:
        return []
    if len(a) * len(b) <= _KRONECKER_THRESHOLD or len(a) == 1 or len(b) == 1:
        return trim(_mul_schoolbook(a, b))
    return trim(_mul_kronecker(a, b))


def power(a, e):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def product(polys):
    polys = list(polys)
    if not polys:
        return [1]
    # Balanced tree keeps operand sizes even, which is what Kronecker likes.
    while len(polys) > 1:
        nxt = [mul(polys[i], polys[i + 1]) for i in range(0, len(polys) - 1, 2)]
        if len(polys) % 2:
            nxt.append(polys[-1])
        polys = nxt
    return polys[0]


def derivative(a):
    return trim([i * c for i, c in islice(enumerate(a), 1, None)])


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def content(a) -> int:
    g = reduce(math.gcd, a, 0)
    return g


def primitive(a):
    """Return (content, primitive part) with positive leading coefficient."""
    if not a:
        return 0, []
    c = content(a)
    if a[-1] < 0:
        c = -c
    return c, [x // c for x in a]


def mod_sym(a, m):
    """Reduce coefficients into the symmetric range (-m/2, m/2]."""
    h = m // 2
    out = []
    for c in a:
        c %= m
        if c > h:
            c -= m
        out.append(c)
    return trim(out)


def mod_pos(a, m):
    return trim([c % m for c in a])


def divmod_exact(a, b):
    """Division over Z when lc(b) divides every needed quotient coefficient.

    Returns (q, r) or None when a non-integral quotient coefficient shows up.
    """
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    db = len(b) - 1
    lc = b[-1]
    if len(r) - 1 < db:
        return [], trim(r)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        qc, rem = divmod(c, lc)
        if rem:
            return None
        q[i - db] = qc
        base = i - db
        for j in range(db + 1):
            r[base + j] -= qc * b[j]
    return trim(q), trim(r[:db])


def exquo(a, b):
    """Exact quotient a / b in Z[x]; None if b does not divide a."""
    res = divmod_exact(a, b)
    if res is None:
        return None
    q, r = res
    if r:
        return None
    return q


def divides(b, a) -> bool:
    return exquo(a, b) is not None


def pseudo_rem(a, b):
    """Pseudo-remainder lc(b)**(deg a - deg b + 1) * a mod b."""
    r = list(a)
    db = len(b) - 1
    lc = b[-1]
    while r and len(r) - 1 >= db:
        c = r[-1]
        k = len(r) - 1 - db
        r = [lc * x for x in r]
        for j in range(db + 1):
            r[k + j] -= c * b[j]
        trim(r)
    return r


def _prs_gcd(a, b):
    # Primitive PRS; slow but unconditional.
    a = primitive(a)[1]
    b = primitive(b)[1]
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = pseudo_rem(a, b)
        a, b = b, (primitive(r)[1] if r else [])
    return a


def _interpolate_sym(h, x):
    # Recover polynomial from its value at x using balanced base-x digits.
    out = []
    half = x // 2
    while h:
        d = h % x
        if d > half:
            d -= x
        out.append(d)
        h = (h - d) // x
    return out


def _heu_gcd(a, b, tries=6):
    na, nb = max_norm(a), max_norm(b)
    B = 2 * min(na, nb) + 29
    x = max(min(B, 99 * math.isqrt(B)),
            2 * min(na // abs(a[-1]), nb // abs(b[-1])) + 2)
    for _ in range(tries):
        ha, hb = evaluate(a, x), evaluate(b, x)
        if ha and hb:
            h = math.gcd(ha, hb)
            cand = primitive(_interpolate_sym(h, x))[1]
            if cand and divides(cand, a) and divides(cand, b):
                return cand
        x = 73794 * x * math.isqrt(math.isqrt(x)) // 27011
    return None


def gcd(a, b):
    """Gcd in Z[x], normalized primitive with positive leading coefficient.

    The integer content gcd is dropped; callers that want it multiply back.
    """
    if not a and not b:
        raise ZeroDivisionError("gcd of two zero polynomials")
    if not a:
        return primitive(b)[1]
    if not b:
        return primitive(a)[1]
    a = primitive(a)[1]
    b = primitive(b)[1]
    if len(a) == 1 or len(b) == 1:
        return [1]
    from . import modp  # local import: modp pulls in numpy

    if modp.coprime_certificate(a, b):
        return [1]
    h = _heu_gcd(a, b)
    if h is None:
        h = _prs_gcd(a, b)
    return h


def reverse(a):
    """x**deg * a(1/x) for a with a(0) != 0."""
    return trim(list(reversed(a)))


def taylor_shift(a, c):
    """Coefficients of a(x + c)."""
    out = list(a)
    n = len(out)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            out[j] += c * out[j + 1]
    return out
