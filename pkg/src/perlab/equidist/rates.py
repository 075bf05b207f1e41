"""Discrepancy of finite point sets against a reference measure, and rate fitting."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import FitError


def discrepancy(points, phi, mu) -> float:
    """|mean of phi over points - integral of phi against mu|."""
    pts = np.asarray(points, dtype=complex)
    if pts.size == 0:
        raise ValueError("discrepancy needs a nonempty point set")
    return abs(float(np.mean(phi(pts))) - mu.integrate(phi))


@dataclass(frozen=True)
class RateFit:
    """Least-squares fit of log(discrepancy) = a + slope * n; lambda_hat = exp(-slope)."""

    points: tuple
    slope: float | None
    lambda_hat: float | None
    r2: float | None
    dropped: int = 0
    degenerate: bool = False


def rate_fit(series, allow_degenerate: bool = False) -> RateFit:
    """Fit exponential decay to (n, discrepancy) pairs, dropping zero values.

    Raises FitError with fewer than 3 usable points unless ``allow_degenerate``,
    in which case a RateFit with ``degenerate=True`` is returned.
    """
    series = tuple((int(n), float(v)) for n, v in series)
    usable = [(n, v) for n, v in series if v > 0 and math.isfinite(v)]
    dropped = len(series) - len(usable)
    if len(usable) < 3:
        if allow_degenerate:
            return RateFit(series, None, None, None, dropped, True)
        raise FitError(f"only {len(usable)} usable points (need 3; {dropped} dropped)")
    n = np.array([p[0] for p in usable], dtype=float)
    y = np.log([p[1] for p in usable])
    A = np.vstack([np.ones_like(n), n]).T
    (a, slope), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - (a + slope * n)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float((resid**2).sum()) / ss_tot if ss_tot > 0 else 1.0
    return RateFit(series, float(slope), math.exp(-slope), r2, dropped, False)
