import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import sympy_orbit_degrees
from perlab.errors import FormMismatchError, RecombinationLimitError, ZeroPolynomialError
from perlab.exactalg import (
    NumberField,
    Poly,
    cyclotomic,
    divrem,
    eisenstein,
    factor_rational,
    max_multiplicity,
    poly_arith,
    poly_gcd,
    resultant,
    squarefree_part,
    univariate_resultant,
)
from perlab.exactalg import ntheory, zz

U = Poly.univariate
H = Poly.homogeneous

small_ints = st.integers(-20, 20)
polys = st.lists(small_ints, min_size=1, max_size=9).map(U)


def _sym(p: Poly):
    x = sympy.Symbol("x")
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)] or [0], x)


# -- arithmetic ---------------------------------------------------------------


def test_mul_add_identity():
    assert poly_arith(U([1, 1]), U([-1, 1]), "mul") == U([-1, 0, 1])
    p = U([3, 0, Fraction(1, 2)])
    assert poly_arith(p, U([]), "add") == p


def test_divrem_example():
    q, r = poly_arith(U([2, -1, 2, 0, 1]), U([1, -1, 1]), "divrem")
    assert q == U([2, 1, 1])
    assert r.is_zero()


def test_divrem_errors():
    with pytest.raises(ZeroPolynomialError):
        divrem(U([1, 1]), U([]))
    with pytest.raises(FormMismatchError):
        U([1, 1]) + H([1, 1])


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_divrem_property(a, b):
    if b.is_zero():
        return
    q, r = divrem(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


# -- gcd ------------------------------------------------------------------------


def test_gcd_examples():
    assert poly_gcd(U([-1, 0, 1]), U([-1, 1])) == U([-1, 1])
    assert poly_gcd(U([1, 0, 1]), U([1, 1, 1])) == U([1])
    p = U([4, 0, 2])
    assert poly_gcd(p, p) == U([2, 0, 1])
    with pytest.raises(ZeroPolynomialError):
        poly_gcd(U([]), U([]))


@settings(max_examples=50, deadline=None)
@given(polys, polys, st.lists(small_ints, min_size=1, max_size=5).map(U))
def test_gcd_divisible_by_common_factor(p, q, r):
    if r.is_zero() or (p.is_zero() and q.is_zero()):
        return
    g = poly_gcd(p * r, q * r)
    assert divrem(g, r)[1].is_zero()
    assert divrem(p * r, g)[1].is_zero()


def test_gcd_matches_sympy():
    rng = random.Random(1)
    for _ in range(40):
        a = U([rng.randint(-9, 9) for _ in range(rng.randint(1, 7))])
        b = U([rng.randint(-9, 9) for _ in range(rng.randint(1, 7))])
        if a.is_zero() and b.is_zero():
            continue
        assert poly_gcd(a, b).degree == sympy.gcd(_sym(a), _sym(b)).degree()


# -- resultant -------------------------------------------------------------------


def test_resultant_examples():
    assert resultant(H([0, 0, 1]), H([1, 0, 0])) == 1
    assert resultant(H([-1, 0, 1]), H([1, 0, 1])) == 4
    assert resultant(H([0, 1, 0]), H([0, 0, 1])) == 0
    with pytest.raises(FormMismatchError):
        resultant(U([1, 1]), H([1, 1]))


def test_resultant_matches_sympy_sylvester():
    rng = random.Random(2)
    for _ in range(20):
        F = H([rng.randint(-5, 5) for _ in range(rng.randint(2, 4))])
        G = H([rng.randint(-5, 5) for _ in range(rng.randint(2, 4))])
        if F.is_zero() or G.is_zero():
            continue
        # Sylvester determinant at the declared degrees, evaluated by sympy
        M = sympy.Matrix(_sylvester(list(reversed(F.coeffs)), list(reversed(G.coeffs))))
        assert resultant(F, G) == Fraction(int(M.det()))


def _sylvester(f, g):
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = [[0] * i + list(f) + [0] * (size - m - 1 - i) for i in range(n)]
    rows += [[0] * i + list(g) + [0] * (size - n - 1 - i) for i in range(m)]
    return rows


def test_resultant_zero_iff_common_root():
    rng = random.Random(3)
    for _ in range(100):
        d1, d2 = rng.randint(1, 4), rng.randint(1, 4)
        F = H([rng.randint(-3, 3) for _ in range(d1 + 1)])
        G = H([rng.randint(-3, 3) for _ in range(d2 + 1)])
        if F.is_zero() or G.is_zero():
            continue
        f, mf = F.dehomogenize()
        g, mg = G.dehomogenize()
        common = poly_gcd(f, g).degree > 0 or (mf > 0 and mg > 0)
        assert (resultant(F, G) == 0) == common


def test_univariate_resultant():
    assert univariate_resultant(U([-1, 0, 1]), U([1, 0, 1])) == 4
    assert univariate_resultant(U([-1, 1]), U([-1, 0, 1])) == 0


# -- squarefree ----------------------------------------------------------------


def test_squarefree_examples():
    # (X - Y)^2 (X + Y)
    form = H([1, -1, -1, 1])
    assert squarefree_part(form) == H([-1, 0, 1])
    p = U([2, -1, 2, 0, 1])
    assert squarefree_part(p) == p
    assert squarefree_part(H([0, 0, 1, 0])) == H([0, 1, 0])
    with pytest.raises(ZeroPolynomialError):
        squarefree_part(U([]))


@settings(max_examples=50, deadline=None)
@given(polys)
def test_squarefree_has_trivial_gcd_with_derivative(p):
    if p.degree < 1:
        return
    s = squarefree_part(p)
    if s.degree > 0:
        assert poly_gcd(s, s.derivative()).degree == 0
    assert max_multiplicity(s) == 1


def test_max_multiplicity():
    assert max_multiplicity(U([1, -1]) ** 3 * U([2, 1])) == 3


# -- factorization ---------------------------------------------------------------


def test_factor_examples():
    fa = factor_rational(U([2, -1, 2, 0, 1]))
    assert sorted(f.coeffs for f, _ in fa) == sorted([U([1, -1, 1]).coeffs, U([2, 1, 1]).coeffs])
    assert factor_rational(U([-1, 0, 0, 1])).degrees() == [1, 2]
    assert factor_rational(U([-2, 0, 1])).degrees() == [2]
    with pytest.raises(ZeroPolynomialError):
        factor_rational(U([]))


def test_factor_homogeneous_reports_y_power():
    # X Y^2 (X^2 - Y^2)
    fa = factor_rational(H([0, 0, -1, 0, 1]))
    assert fa.y_power == 0
    fa = factor_rational(H([0, -1, 0, 1, 0]))
    assert fa.y_power == 1
    assert fa.expand() == H([0, -1, 0, 1, 0])


def test_factor_expand_roundtrip_and_sympy():
    rng = random.Random(4)
    for _ in range(40):
        parts = [U([rng.randint(-6, 6) for _ in range(rng.randint(2, 4))]) for _ in range(rng.randint(1, 3))]
        p = U([rng.choice([-3, -1, 2, 5])])
        for q in parts:
            if not q.is_zero():
                p = p * q ** rng.randint(1, 2)
        fa = factor_rational(p)
        assert fa.expand() == p
        assert fa.degrees() == sympy_orbit_degrees(p.coeffs)


def test_factor_swinnerton_dyer():
    # irreducible over Q but splits into quadratics/linears mod every prime
    x = sympy.Symbol("x")
    s = sympy.Poly(sympy.minimal_polynomial(sympy.sqrt(2) + sympy.sqrt(3) + sympy.sqrt(5), x), x)
    p = U([int(c) for c in reversed(s.all_coeffs())])
    assert factor_rational(p).degrees() == [8]


def test_factor_period_polynomial_vs_sympy():
    # f^3(z) - z for f = z^2 + 1, degree 8
    z = sympy.Symbol("z")
    f = lambda w: w**2 + 1  # noqa: E731
    e = sympy.Poly(sympy.expand(f(f(f(z))) - z), z)
    p = U([int(c) for c in reversed(e.all_coeffs())])
    assert factor_rational(p).degrees() == sympy_orbit_degrees(p.coeffs) == [2, 6]


def test_recombination_cap():
    x = sympy.Symbol("x")
    s = sympy.Poly(sympy.minimal_polynomial(sympy.sqrt(2) + sympy.sqrt(3) + sympy.sqrt(5) + sympy.sqrt(7), x), x)
    p = U([int(c) for c in reversed(s.all_coeffs())])
    with pytest.raises(RecombinationLimitError):
        factor_rational(p, cap=2)


def test_cyclotomic_and_binomials():
    assert cyclotomic(1) == [-1, 1]
    assert cyclotomic(6) == [1, -1, 1]
    assert factor_rational(U([-1] + [0] * 4094 + [1])).degrees() == sorted(
        ntheory.euler_phi(m) for m in ntheory.divisors(4095)
    )
    assert eisenstein([-2, 0, 0, 0, 0, 0, 0, 0, 1])
    assert not eisenstein([-1, 0, 1])


def test_ntheory():
    assert ntheory.euler_phi(4095) == sympy.totient(4095)
    assert ntheory.divisors(12) == [1, 2, 3, 4, 6, 12]
    assert ntheory.mobius(30) == -1
    assert ntheory.factorint(2**31 - 1) == ((2**31 - 1, 1),)
    assert ntheory.factorint(720720) == tuple(sorted(sympy.factorint(720720).items()))


def test_zz_mul_large():
    rng = random.Random(5)
    a = [rng.randint(-(10**40), 10**40) for _ in range(300)]
    b = [rng.randint(-(10**40), 10**40) for _ in range(200)]
    ref = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            ref[i + j] += x * y
    assert zz.mul(a, b) == ref


# -- number fields -----------------------------------------------------------------


def test_number_field_arithmetic():
    K = NumberField(U([1, 1, 1]))  # primitive cube roots of unity
    w = K.gen
    assert K.pow(w, 3) == K.one
    assert K.is_zero(K.add(K.add(K.one, w), K.mul(w, w)))
    a = K.element([Fraction(2, 3), 5])
    assert K.mul(a, K.inv(a)) == K.one


def test_json_roundtrip():
    p = U([Fraction(1, 2), 0, -3])
    assert Poly.from_json(p.to_json()) == p
    assert p.to_json() == ["1/2", "0/1", "-3/1"]
