"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` (the lines are repeated in the
terminal summary) or ``python tests/test_acceptance.py`` to print them directly.
"""

import json
import math
import random
import time
from fractions import Fraction

from oracles import brute_force_curve_count, euler_phi_brute, max_phi_over_divisors
from perlab.cli import data_path, load_bumps, load_curve, load_map, main, uniform_disc
from perlab.dynamics import ProjPoint, product_map
from perlab.equidist.bumps import bump
from perlab.equidist.cubes import dilates_disjoint, greedy_cubes
from perlab.equidist.measures import CircleMeasure, sample_equilibrium
from perlab.equidist.report import equidist_report
from perlab.exactalg import eisenstein
from perlab.heights import canonical_height
from perlab.intersect import bound_check, count_periodic_on_curve, degree_growth
from perlab.periodic import orbit_report, periodic_polynomial, preimage_polynomial, preimage_report

RESULTS: dict[int, str] = {}


def _record(k: int, ok: bool, detail: str):
    line = f"ACCEPTANCE {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[k] = line
    print(line)
    assert ok, line


def _map(name):
    return load_map(data_path("maps", f"{name}.json"))


def test_acceptance_01_count_law():
    t = time.perf_counter()
    maps = ["z2", "z2+1", "z2-1", "z2+z", "rat2"]
    bad = []
    for name in maps:
        f = _map(name)
        assert f.d == 2
        for n in range(1, 9):
            s = periodic_polynomial(f, n, factor=False)
            if s.raw_degree != 2**n + 1:
                bad.append((name, n, s.raw_degree))
    dt = time.perf_counter() - t
    _record(1, not bad and dt < 30, f"deg Phi_n = 2^n + 1 for 5 maps, n <= 8; mismatches {bad}; {dt:.1f}s (< 30s)")


def test_acceptance_02_squaring_map_orbits():
    t = time.perf_counter()
    f = _map("z2")
    bad = []
    for n in range(1, 13):
        s = periodic_polynomial(f, n)
        ref = max_phi_over_divisors(2**n - 1)
        if s.count != 2**n + 1 or max(s.orbit_degrees) != ref:
            bad.append(n)
    # 4095 = 3^2 * 5 * 7 * 13, so phi(4095) = 6 * 4 * 6 * 12
    assert euler_phi_brute(4095) == 1728
    rep = orbit_report(f, range(4, 13), 1.3)
    dt = time.perf_counter() - t
    ok = not bad and rep.lambda_hat >= 1.4 and dt < 120
    _record(2, ok, f"|Per_n| and max orbit exact for n <= 12 (bad n: {bad}); "
                   f"lambda_hat {rep.lambda_hat:.4f} >= 1.4; {dt:.1f}s (< 120s)")


def test_acceptance_03_generic_map():
    t = time.perf_counter()
    f = _map("z2+1")
    rep = orbit_report(f, range(1, 9), 1.2)
    n0 = rep.n0
    ok_rows = n0 is not None and all(r.proportion_large >= 1 - 1.2**-r.n for r in rep.rows if r.n >= n0)
    dt = time.perf_counter() - t
    ok = ok_rows and n0 <= 4 and dt < 300
    props = ", ".join(f"{r.proportion_large:.3f}" for r in rep.rows)
    _record(3, ok, f"z^2+1: n0 = {n0} (<= 4); proportions [{props}]; {dt:.1f}s (< 300s)")


def test_acceptance_04_preimage_tower(capsys):
    t = time.perf_counter()
    f = _map("z2")
    towers_ok = True
    for n in range(1, 11):
        s = preimage_polynomial(f, n, 2)
        oracle = [-2] + [0] * (2**n - 1) + [1]  # x^(2^n) - 2, Eisenstein at 2
        towers_ok &= eisenstein(oracle) and list(s.orbit_degrees) == [2**n]
    rep = preimage_report(f, 2, range(1, 11), 1.3)
    code = main(["preimage", "--map", str(data_path("maps", "z2.json")), "--a", "0", "--n", "1..3"])
    err = capsys.readouterr().err
    refused = code == 3 and "exceptional set" in err
    dt = time.perf_counter() - t
    ok = towers_ok and abs(rep.lambda_hat - 2.0) <= 0.01 and refused and dt < 60
    _record(4, ok, f"orbit degrees {{2^n}} for n <= 10: {towers_ok}; lambda_hat {rep.lambda_hat:.4f}; "
                   f"a = 0 exit {code}; {dt:.1f}s (< 60s)")


def test_acceptance_05_exact_rate():
    rep = equidist_report(_map("z2"), range(4, 13), [bump(0, 0.25)], CircleMeasure())
    worst = max(abs(r.discrepancy * (2**r.n + 1) - 1) for r in rep.rows)
    lam = rep.fits[0].lambda_hat
    ok = worst <= 1e-12 and abs(lam - 2) <= 0.05
    _record(5, ok, f"discrepancy = 1/(2^n+1), worst relative error {worst:.1e} (<= 1e-12); lambda_hat {lam:.4f} (2 +- 0.05)")


def test_acceptance_06_empirical_rate():
    t = time.perf_counter()
    f = _map("z2-1")
    bumps = load_bumps(data_path("bumps_z2-1.json"))
    mu = sample_equilibrium(f, N=10_000, burn_in=30, seed=7, method="tree")
    rep = equidist_report(f, range(3, 11), bumps, mu)
    fits = rep.fits
    ok = len(bumps) == 5 and all(not ft.degenerate and ft.lambda_hat > 1.1 and ft.r2 >= 0.8 for ft in fits)
    dt = time.perf_counter() - t
    ok = ok and dt < 300
    labels = [b.get("label", str(i)) for i, b in enumerate(json.loads(data_path("bumps_z2-1.json").read_text()))]
    desc = "; ".join(f"{lab}: {ft.lambda_hat:.3f}/{ft.r2:.3f}" for lab, ft in zip(labels, fits))
    _record(6, ok, f"z^2-1, 5 bumps, N = 1e4, seed 7 (lambda_hat/r2): {desc}; {dt:.1f}s (< 300s)")


def test_acceptance_07_heights():
    f = _map("z2-1")
    per_ok, npts = True, 0
    for n in range(1, 9):
        s = periodic_polynomial(f, n)
        pts = [ProjPoint(-g.coeffs[0] / g.coeffs[1], 1) for g in s.factors if g.degree == 1]
        if s.includes_infinity:
            pts.append(ProjPoint.infinity())
        for x in pts:
            npts += 1
            per_ok &= canonical_height(f, x, tol=1e-10).value <= 1e-8
    rng = random.Random(7)
    worst = 0.0
    for _ in range(20):
        bound = int(math.exp(5))  # Weil height log max(|p|, |q|) <= 5
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        a = canonical_height(f, x, tol=1e-10)
        b = canonical_height(f, f(ProjPoint.from_value(x)), tol=1e-10)
        worst = max(worst, abs(b.value - 2 * a.value))
    h2 = canonical_height(_map("z2"), 2, tol=1e-10).value
    ok = per_ok and npts > 0 and worst <= 1e-8 and abs(h2 - math.log(2)) <= 1e-9
    _record(7, ok, f"{npts} rational periodic points with hhat <= 1e-8: {per_ok}; "
                   f"functional equation worst {worst:.1e}; |hhat(2) - log 2| = {abs(h2 - math.log(2)):.1e}")


def test_acceptance_08_cubes():
    t = time.perf_counter()
    sel = greedy_cubes(uniform_disc(100_000, 0), 16, dilate=2, kappa=1.0)
    dt = time.perf_counter() - t
    ok = (len(sel.cubes) == 16 and dilates_disjoint(sel.cubes, 2)
          and all(m >= sel.floor for m in sel.measures) and dt < 10)
    _record(8, ok, f"{len(sel.cubes)} cubes, dilates disjoint, min mass {min(sel.measures):.2e} "
                   f">= floor {sel.floor:.2e}; {dt:.1f}s (< 10s)")


def test_acceptance_09_curve_bound():
    t = time.perf_counter()
    f = _map("z2")
    ff = product_map([f, f])
    rows = []
    ok = True
    for name in ("diagonal", "x0", "generic11"):
        Z = load_curve(data_path("curves", f"{name}.json"))
        for n in range(1, 7):
            s = periodic_polynomial(f, n, factor=False)
            count = count_periodic_on_curve(ff, Z, n)
            oracle = brute_force_curve_count(s, s, Z)
            bc = bound_check(ff, Z, n, c=2.0)
            ok &= count == oracle and bc.passed and bc.bound == 2 * Z.total_degree * 2**n
            if n == 6:
                rows.append(f"{name}: {count}/{int(bc.bound)}")
    dt = time.perf_counter() - t
    ok = ok and dt < 120
    _record(9, ok, f"counts equal the oracle for n <= 6 and stay under 2 e 2^n (n = 6: {', '.join(rows)}); {dt:.1f}s (< 120s)")


def test_acceptance_10_degree_growth():
    rng = random.Random(2024)
    ok = True
    largest = 0
    for _ in range(100):
        e, q, d, n = rng.randint(1, 10**6), rng.randint(0, 5), rng.randint(2, 60), rng.randint(1, 25)
        value = degree_growth(e, q, d, n)
        ok &= value == sum(math.comb(q, j) * d ** (n * j) * e for j in range(q + 1))
        largest = max(largest, value)
    ok &= largest >= 10**30
    _record(10, ok, f"100 random tuples match the binomial sum; largest value ~1e{len(str(largest)) - 1}")


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q", "-s"]))
