"""Discrepancy of Per_n against a reference measure, per bump, with fitted rates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..dynamics import RationalMap
from ..exactalg import zz
from ..periodic import period_form_ints, periodic_polynomial
from .rates import RateFit, discrepancy, rate_fit
from .roots import DynamicalEvaluator, complex_roots


def periodic_points_complex(f: RationalMap, n: int, precision_bits: int = 64, cap: int | None = None) -> np.ndarray:
    """Per_n as complex numbers (infinity as complex inf), each point once."""
    form = period_form_ints(f, n, cap)
    spec = periodic_polynomial(f, n, factor=False, cap=cap)
    p = spec.set_polynomial
    finite = zz.trim(list(form))
    ev = None
    if p.degree == len(finite) - 1 and p.degree > 0:
        # squarefree already: evaluate Phi_n by iterating the map
        scale = Fraction(finite[-1]) / p.lc
        ev = DynamicalEvaluator(f.f_ints, f.g_ints, n, scale=scale, degree=p.degree, lc=p.lc)
    if p.degree > 0:
        roots = complex_roots(p, precision_bits, evaluator=ev, check_squarefree=False).roots
    else:
        roots = np.zeros(0, dtype=complex)
    if spec.includes_infinity:
        roots = np.concatenate([roots, [complex(np.inf, 0)]])
    return roots


@dataclass(frozen=True)
class EquidistRow:
    bump_id: int
    n: int
    count: int
    discrepancy: float
    lambda_hat_running: float | None
    c3_bound: float


@dataclass(frozen=True)
class EquidistReport:
    rows: tuple
    fits: tuple  # one RateFit per bump


def equidist_report(f: RationalMap, n_range, bumps, mu, cap: int | None = None) -> EquidistReport:
    """Discrepancy table over n for each bump, and a RateFit per bump."""
    ns = sorted(set(int(n) for n in n_range))
    if not ns:
        raise ValueError("empty n range")
    integrals = [mu.integrate(b) for b in bumps]
    series = [[] for _ in bumps]
    rows = []
    for n in ns:
        pts = periodic_points_complex(f, n, cap=cap)
        for j, b in enumerate(bumps):
            disc = abs(float(np.mean(b(pts))) - integrals[j])
            series[j].append((n, disc))
            running = rate_fit(series[j], allow_degenerate=True).lambda_hat
            rows.append(EquidistRow(j, n, len(pts), disc, running, b.c3_bound))
    fits = tuple(rate_fit(s, allow_degenerate=True) for s in series)
    rows.sort(key=lambda r: (r.bump_id, r.n))
    return EquidistReport(tuple(rows), fits)


__all__ = ["EquidistReport", "EquidistRow", "RateFit", "discrepancy", "equidist_report", "periodic_points_complex"]
