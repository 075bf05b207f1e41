import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perlab.dynamics import ProjPoint, RationalMap
from perlab.heights import bezout_forms, canonical_height, is_preperiodic, telescope_constant, weil_height
from perlab.periodic import periodic_polynomial

Z2 = RationalMap.polynomial([0, 0, 1])
Z2M1 = RationalMap.polynomial([-1, 0, 1])
Z2M2 = RationalMap.polynomial([-2, 0, 1])
Z2P1 = RationalMap.polynomial([1, 0, 1])
RAT = RationalMap.from_fraction([-1, 0, 2], [0, 0, 3])
CUBIC = RationalMap.from_fraction([1, -3, 0, 2], [5, 0, 7])


def test_weil_height():
    assert weil_height(2) == pytest.approx(math.log(2))
    assert weil_height(Fraction(3, 5)) == pytest.approx(math.log(5))
    assert weil_height(0) == 0
    assert weil_height("inf") == 0
    assert weil_height(Fraction(-7, 3)) == pytest.approx(math.log(7))


def test_bezout_identity():
    for f in (Z2, Z2M1, Z2P1, RAT, CUBIC):
        u1, v1, u2, v2, R = bezout_forms(f)
        d = f.d
        for (u, v), k in (((u1, v1), 2 * d - 1), ((u2, v2), 0)):
            prod = [0] * (2 * d)
            for i, c in enumerate(f.f_ints):
                for j, w in enumerate(u):
                    prod[i + j] += c * w
            for i, c in enumerate(f.g_ints):
                for j, w in enumerate(v):
                    prod[i + j] += c * w
            assert prod == [R if t == k else 0 for t in range(2 * d)]


def test_telescope_constant_bounds_one_step():
    rng = random.Random(0)
    for f in (Z2M1, Z2P1, RAT, CUBIC):
        C = telescope_constant(f)
        for _ in range(50):
            x = ProjPoint.from_value(Fraction(rng.randint(-500, 500), rng.randint(1, 500)))
            assert abs(weil_height(f(x)) - f.d * weil_height(x)) <= C + 1e-12


def test_examples():
    est = canonical_height(Z2, 2, tol=1e-9)
    assert abs(est.value - math.log(2)) <= 1e-9
    est = canonical_height(Z2M1, 0, tol=1e-9)
    assert abs(est.value) <= est.error <= 1e-9
    assert canonical_height(Z2M1, "7/3").iterations > 0


def test_error_structure():
    for f, x in ((Z2M1, Fraction(7, 3)), (RAT, Fraction(-5, 2)), (CUBIC, Fraction(1, 4))):
        est = canonical_height(f, x, tol=1e-10)
        assert est.error <= 1e-10
        tail = est.telescope_constant / ((f.d - 1) * f.d**est.iterations)
        assert est.error == pytest.approx(tail + est.rounding)
        assert est.value >= -est.error


def test_matches_direct_limit():
    # hhat = lim h(f^n x) / d^n, with |hhat - h(f^n x)/d^n| <= C / ((d - 1) d^n)
    for f, x in ((Z2P1, Fraction(7, 3)), (RAT, Fraction(5, 2)), (CUBIC, Fraction(-2, 7))):
        n = 10
        y = ProjPoint.from_value(x)
        for _ in range(n):
            y = f(y)
        p, q = y.coprime_ints()
        direct = math.log(max(abs(p), abs(q))) / f.d**n
        bound = telescope_constant(f) / ((f.d - 1) * f.d**n)
        est = canonical_height(f, x, tol=1e-12)
        assert abs(est.value - direct) <= bound + est.error


def test_periodic_points_have_height_zero():
    for f in (Z2M1, Z2M2, Z2):
        for n in range(1, 7):
            s = periodic_polynomial(f, n)
            pts = [ProjPoint(-g.coeffs[0] / g.coeffs[1], 1) for g in s.factors if g.degree == 1]
            if s.includes_infinity:
                pts.append(ProjPoint.infinity())
            for x in pts:
                est = canonical_height(f, x, tol=1e-9)
                assert abs(est.value) <= 1e-8


@settings(max_examples=20, deadline=None)
@given(st.integers(-148, 148), st.integers(1, 148), st.sampled_from([Z2M1, Z2P1, RAT, CUBIC]))
def test_functional_equation(p, q, f):
    x = ProjPoint(Fraction(p, q), 1)
    a = canonical_height(f, x, tol=1e-10)
    b = canonical_height(f, f(x), tol=1e-10)
    assert abs(b.value - f.d * a.value) <= a.error + b.error


def test_is_preperiodic_examples():
    assert is_preperiodic(Z2, 1)
    assert not is_preperiodic(Z2, 2)
    assert is_preperiodic(Z2M1, 0)
    assert is_preperiodic(Z2, -1)
    assert is_preperiodic(Z2, "inf")


def test_is_preperiodic_agrees_with_height():
    pts = [(Z2M2, x) for x in (0, 1, -1, 2, -2, 3, Fraction(1, 2))]
    pts += [(Z2M1, x) for x in (0, 1, -1, 2, Fraction(1, 3), "inf")]
    pts += [(Z2, x) for x in (0, 1, -1, 2, Fraction(1, 2))]
    pts += [(RAT, x) for x in (1, -1, Fraction(1, 2))]
    assert len(pts) >= 20
    for f, x in pts:
        est = canonical_height(f, x, tol=1e-9)
        assert is_preperiodic(f, x) == (est.value <= est.error), (f, x)


def test_tol_validation():
    with pytest.raises(ValueError):
        canonical_height(Z2, 2, tol=0)
