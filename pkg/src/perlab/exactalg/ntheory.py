"""Small integer number theory: divisors, Euler phi, Moebius, trial factoring."""

from __future__ import annotations

from functools import lru_cache

_MR_BOUND = 3_317_044_064_679_887_385_961_981


@lru_cache(maxsize=4096)
def factorint(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of a positive int by trial division (meant for n below ~10^12)."""
    if n < 1:
        raise ValueError("factorint expects a positive integer")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, k in factorint(n):
        divs = [d * p**e for d in divs for e in range(k + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorint(n):
        out = out // p * (p - 1)
    return out


def mobius(n: int) -> int:
    fs = factorint(n)
    if any(k > 1 for _, k in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def small_prime_factors(n: int, limit: int = 100_000) -> list[int]:
    """Prime factors of |n| up to ``limit``, plus the cofactor if it is prime."""
    from .modp import is_prime

    n = abs(n)
    out = []
    d = 2
    while d <= limit and d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    # Miller-Rabin on the first 12 prime bases is deterministic below this bound.
    if n > 1 and (n <= limit * limit or (n < _MR_BOUND and is_prime(n))):
        out.append(n)
    return out
