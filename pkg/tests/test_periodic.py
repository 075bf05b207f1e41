from fractions import Fraction

import pytest
import sympy

from oracles import max_phi_over_divisors, sympy_orbit_degrees
from perlab.dynamics import ProjPoint, RationalMap, iterate, kappa_minus
from perlab.errors import DegreeCapError, ExceptionalPointError, NotSquarefreeError
from perlab.exactalg import Poly, divrem
from perlab.periodic import (
    fit_growth,
    galois_spectrum,
    orbit_report,
    periodic_polynomial,
    preimage_polynomial,
    preimage_report,
)

U = Poly.univariate
Z2 = RationalMap.polynomial([0, 0, 1])
Z2P1 = RationalMap.polynomial([1, 0, 1])
Z2M1 = RationalMap.polynomial([-1, 0, 1])
Z2PZ = RationalMap.polynomial([0, 1, 1])
RAT = RationalMap.from_fraction([-1, 0, 2], [0, 0, 3])
MAPS = [Z2, Z2P1, Z2M1, Z2PZ, RAT, RationalMap.polynomial([1, 0, 0, 1]),
        RationalMap.from_fraction([1, 0, 1], [0, 2])]


def test_squaring_map_spectrum():
    for n in range(1, 9):
        s = periodic_polynomial(Z2, n)
        assert s.count == 2**n + 1
        assert s.raw_degree == 2**n + 1
        assert s.includes_infinity
        # finite part is z (z^(2^n - 1) - 1)
        assert s.set_polynomial == U([0, -1] + [0] * (2**n - 2) + [1])


def test_spec_examples():
    s = periodic_polynomial(Z2P1, 2)
    assert s.set_polynomial == U([2, -1, 2, 0, 1])
    assert s.includes_infinity and s.count == 5
    assert s.orbit_degrees == (1, 2, 2)
    assert periodic_polynomial(Z2, 2).orbit_degrees == (1, 1, 1, 2)


def test_preimage_examples():
    s = preimage_polynomial(Z2, 3, 2)
    assert s.set_polynomial == U([-2] + [0] * 7 + [1])
    assert s.count == 8 and s.orbit_degrees == (8,)
    s = preimage_polynomial(Z2, 2, 0)
    assert s.count == 1 and s.set_polynomial == U([0, 1])
    s = preimage_polynomial(Z2, 2, 1)
    assert s.count == 4 and s.orbit_degrees == (1, 1, 2)
    s = preimage_polynomial(Z2, 1, "inf")
    assert s.count == 1 and s.includes_infinity


def test_galois_spectrum():
    assert galois_spectrum(U([-1, 0, 0, 1])) == (1, 2)
    assert galois_spectrum(U([2, -1, 2, 0, 1])) == (2, 2)
    assert galois_spectrum(U([-2] + [0] * 7 + [1])) == (8,)
    with pytest.raises(NotSquarefreeError):
        galois_spectrum(U([1, -2, 1]))
    # a form with a simple root at infinity: X (X - Y) Y
    assert galois_spectrum(Poly.homogeneous([0, -1, 1])) == (1, 1)


def test_raw_degree_count_law():
    for f in MAPS:
        for n in range(1, 6):
            s = periodic_polynomial(f, n, factor=False)
            assert s.raw_degree == f.d**n + 1


def test_spectrum_invariants():
    for f in MAPS[:5]:
        for n in range(1, 6):
            s = periodic_polynomial(f, n)
            assert s.count == s.set_polynomial.degree + (1 if s.includes_infinity else 0)
            assert sum(s.orbit_degrees) == s.count
            assert sum(s.finite_orbit_degrees) == s.set_polynomial.degree
            assert max(s.orbit_degrees) <= s.count


def test_orbit_degrees_match_sympy():
    for f in (Z2P1, Z2M1, Z2PZ, RAT):
        for n in range(1, 6):
            s = periodic_polynomial(f, n)
            assert list(s.finite_orbit_degrees) == sympy_orbit_degrees(s.set_polynomial.coeffs)


def test_divisor_inclusion():
    for f in MAPS[:5]:
        for n in range(2, 7):
            sn = periodic_polynomial(f, n, factor=False)
            for m in range(1, n):
                if n % m:
                    continue
                sm = periodic_polynomial(f, m, factor=False)
                assert divrem(sn.set_polynomial, sm.set_polynomial)[1].is_zero()
                assert sm.includes_infinity <= sn.includes_infinity


def test_rational_periodic_points_are_periodic():
    for f in MAPS:
        for n in range(1, 6):
            s = periodic_polynomial(f, n)
            pts = [ProjPoint(-g.coeffs[0] / g.coeffs[1], 1) for g in s.factors if g.degree == 1]
            if s.includes_infinity:
                pts.append(ProjPoint.infinity())
            for x in pts:
                y = x
                for _ in range(n):
                    y = f(y)
                assert y == x


def test_max_orbit_of_squaring_map():
    for n in range(1, 11):
        s = periodic_polynomial(Z2, n)
        assert max(s.orbit_degrees) == max_phi_over_divisors(2**n - 1)


def test_orbit_report_squaring_map():
    rep = orbit_report(Z2, range(2, 11), 1.3)
    assert rep.column("count") == [2**n + 1 for n in range(2, 11)]
    for r in rep.rows:
        assert 0 <= r.proportion_large <= 1
        assert r.max_orbit <= r.count
        if r.n >= 4:
            assert r.proportion_large >= 1 - 1.3**-r.n
    assert rep.n0 is not None and rep.n0 <= 4
    rep = orbit_report(Z2, range(4, 13), 1.3)
    assert rep.lambda_hat >= 1.4
    with pytest.raises(ValueError):
        orbit_report(Z2, [], 1.3)
    with pytest.raises(ValueError):
        orbit_report(Z2, [2], 1.0)


def test_preimage_report():
    rep = preimage_report(Z2, 2, range(1, 9), 1.3)
    assert rep.column("max_orbit") == [2**n for n in range(1, 9)]
    assert abs(rep.lambda_hat - 2.0) <= 0.01
    assert all(r.kappa_minus == 1 and r.kappa_ok for r in rep.rows)
    with pytest.raises(ExceptionalPointError, match="exceptional set"):
        preimage_report(Z2, 0, range(1, 4), 1.3)
    with pytest.raises(ExceptionalPointError):
        preimage_report(Z2M1, "inf", range(1, 4), 1.3)


def test_preimage_report_roots_of_unity():
    rep = preimage_report(Z2, 1, range(1, 9), 1.3)
    assert rep.column("count") == [2**n for n in range(1, 9)]
    x = sympy.Symbol("x")
    for n in (3, 5):
        ref = sorted(sympy.degree(q, x) for q, _ in sympy.factor_list(x ** (2**n) - 1)[1])
        assert list(preimage_polynomial(Z2, n, 1).orbit_degrees) == ref


def test_preimage_count_vs_kappa():
    for f in (Z2M1, Z2P1, RAT):
        for a in (-1, 0, 1, Fraction(1, 2)):
            for n in range(1, 5):
                s = preimage_polynomial(f, n, a, factor=False)
                assert s.count <= f.d**n
                assert (s.count == f.d**n) == (kappa_minus(f, n, a).kappa == 1)


def test_degree_cap():
    with pytest.raises(DegreeCapError):
        periodic_polynomial(Z2, 6, cap=32)
    assert periodic_polynomial(Z2, 5, cap=32).count == 33


def test_fit_growth():
    assert abs(fit_growth([1, 2, 3, 4], [2, 4, 8, 16]) - 2) < 1e-12
    assert fit_growth([1], [3]) is None


def test_iterate_consistency_with_period_form():
    # rational fixed points of f^2 from the factorization agree with direct iteration
    f2 = iterate(Z2M1, 2)
    s = periodic_polynomial(Z2M1, 2)
    for g in s.factors:
        if g.degree == 1:
            x = ProjPoint(-g.coeffs[0] / g.coeffs[1], 1)
            assert f2(x) == x
