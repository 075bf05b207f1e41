import math
import random
from fractions import Fraction

import pytest

from oracles import brute_force_curve_count
from perlab.dynamics import RationalMap, product_map
from perlab.errors import NotSquarefreeError
from perlab.intersect import (
    BihomCurve,
    bound_check,
    count_periodic_on_curve,
    curve_from_matrix,
    degree_growth,
    diagonal,
    vertical,
)
from perlab.periodic import periodic_polynomial

Z2 = RationalMap.polynomial([0, 0, 1])
Z2M1 = RationalMap.polynomial([-1, 0, 1])
Z2P1 = RationalMap.polynomial([1, 0, 1])
RAT = RationalMap.from_fraction([-1, 0, 2], [0, 0, 3])

GENERIC = curve_from_matrix([[-3, 1], [1, 1]])  # xy + x + y - 3
CURVES = [
    diagonal(),
    vertical(0),
    vertical(-1),
    GENERIC,
    curve_from_matrix([[0, 1], [0, 0], [1, 0]]),  # y + x^2
    curve_from_matrix([[1, 0, -1]]),  # y^2 = 1
    curve_from_matrix([[0, 0], [0, 1]]),  # xy: the two axes
    curve_from_matrix([[-1, 0, 1], [0, 0, 0], [1, 0, 0]]),  # x^2 + y^2 = 1
    curve_from_matrix([[2, 0], [0, 1]]),  # xy + 2
]


def test_degree_growth_examples():
    assert degree_growth(1, 1, 2, 3) == 9
    assert degree_growth(2, 1, 2, 2) == 10
    assert degree_growth(5, 0, 3, 7) == 5
    with pytest.raises(ValueError):
        degree_growth(0, 1, 2, 1)


def test_degree_growth_binomial_identity():
    rng = random.Random(10)
    big = 0
    for _ in range(100):
        e, q, d, n = rng.randint(1, 10**6), rng.randint(0, 4), rng.randint(2, 50), rng.randint(1, 20)
        expansion = sum(math.comb(q, j) * d ** (n * j) * e for j in range(q + 1))
        assert degree_growth(e, q, d, n) == expansion
        big = max(big, expansion)
    assert big >= 10**30


def test_diagonal_and_fiber_counts():
    ff = product_map([Z2, Z2])
    for n in range(1, 9):
        assert count_periodic_on_curve(ff, diagonal(), n) == 2**n + 1
        assert count_periodic_on_curve(ff, vertical(0), n) == 2**n + 1


def test_full_fiber_is_flagged():
    ff = product_map([Z2, Z2])
    res = count_periodic_on_curve(ff, vertical(0), 3, details=True)
    assert res.count == 9 and len(res.fibers) == 1
    # a vertical line through a non-periodic point meets nothing
    res = count_periodic_on_curve(ff, vertical(2), 3, details=True)
    assert res.count == 0 and res.fibers == ()
    assert count_periodic_on_curve(ff, diagonal(), 3, details=True).fibers == ()


def test_generic_curve_on_squaring_map():
    ff = product_map([Z2, Z2])
    # only (1, 1) has both coordinates periodic for z^2 on xy + x + y = 3
    for n in range(1, 7):
        assert count_periodic_on_curve(ff, GENERIC, n) == 1


@pytest.mark.parametrize("pair", [(Z2, Z2), (Z2, Z2M1), (Z2P1, Z2M1), (RAT, Z2)])
def test_matches_brute_force(pair):
    fg = product_map(list(pair))
    f, g = pair
    for n in range(1, 7):
        if f.d**n > 64:
            break
        sf = periodic_polynomial(f, n, factor=False)
        sg = periodic_polynomial(g, n, factor=False)
        for Z in CURVES:
            assert count_periodic_on_curve(fg, Z, n) == brute_force_curve_count(sf, sg, Z), (n, Z)


def test_bound_check():
    ff = product_map([Z2, Z2])
    for n in range(1, 7):
        r = bound_check(ff, diagonal(), n)
        assert r.passed and r.bound == 2 * 2 * 2**n and r.margin == r.bound - r.count
        assert bound_check(ff, vertical(0), n).passed
    r = bound_check(ff, diagonal(), 4, c=0.1)
    assert not r.passed and r.margin < 0


def test_monotone_along_divisibility():
    fg = product_map([Z2, Z2M1])
    counts = {n: [count_periodic_on_curve(fg, Z, n) for Z in CURVES] for n in range(1, 7)}
    for n in counts:
        for m in counts:
            if n % m == 0:
                assert all(a <= b for a, b in zip(counts[m], counts[n]))


def test_curve_validation():
    with pytest.raises(ValueError):
        curve_from_matrix([[0, 0], [0, 0]])
    with pytest.raises(ValueError):
        BihomCurve(((1, 0), (0, 0)), (1, 1))  # no x or y term: bidegree overstated
    with pytest.raises(ValueError):
        BihomCurve(((1,), (1,)), (2, 0))
    with pytest.raises(NotSquarefreeError):
        curve_from_matrix([[1], [-2], [1]])  # (x - 1)^2
    Z = curve_from_matrix([[Fraction(1, 2), 1], [1, 0]])
    assert BihomCurve.from_json(Z.to_json()) == Z
    assert Z.total_degree == 2


def test_needs_two_factors():
    with pytest.raises(ValueError):
        count_periodic_on_curve(product_map([Z2]), diagonal(), 1)
