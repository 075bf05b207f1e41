"""Radial C^3 bump functions with explicit derivative bounds.

Profile: psi(t) = 1 for t <= 1, 0 for t >= 2 and S(2 - t) in between, where
S(s) = 35 s^4 - 84 s^5 + 70 s^6 - 20 s^7 is the degree-7 smoothstep (its first
three derivatives vanish at s = 0 and s = 1). The bump is
phi(z) = psi(|z - c| / r).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Sup over the plane of |d^a/dx^a d^b/dy^b psi(|z|)|, 1 <= a + b <= 3, for r = 1,
# rounded up. The pure third derivatives dominate (52.5); the test suite
# recomputes these maxima by symbolic differentiation.
PROFILE_C3 = 53.0


def profile(t):
    t = np.asarray(t, dtype=float)
    s = np.clip(2.0 - t, 0.0, 1.0)
    return s**4 * (35 - 84 * s + 70 * s**2 - 20 * s**3)


@dataclass(frozen=True)
class BumpFunction:
    """psi(|w - center| / r) in the chart w = z (chart 0) or w = 1/z (chart 'inf')."""

    center: complex
    r: float
    chart: str = "0"

    @property
    def c3_bound(self) -> float:
        """Bound on all partial derivatives of order <= 3 in the bump's chart."""
        return PROFILE_C3 * max(self.r**-3, 1.0)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if self.chart == "inf":
            with np.errstate(all="ignore"):
                w = np.where(np.isinf(z), 0, 1 / np.where(z == 0, np.inf, z))
        else:
            w = z
        with np.errstate(invalid="ignore"):
            t = np.abs(w - self.center) / self.r
        t = np.where(np.isnan(t), np.inf, t)
        return profile(t)

    def to_json(self) -> dict:
        return {"center": [self.center.real, self.center.imag], "r": self.r, "chart": self.chart}

    @classmethod
    def from_json(cls, data: dict) -> "BumpFunction":
        c = data["center"]
        c = complex(c[0], c[1]) if isinstance(c, (list, tuple)) else complex(c)
        return bump(c, float(data["r"]), data.get("chart", "0"))


def bump(center, r: float, chart: str = "0") -> BumpFunction:
    if not r > 0:
        raise ValueError("bump radius must be positive")
    if chart not in ("0", "inf"):
        raise ValueError("chart must be '0' or 'inf'")
    return BumpFunction(complex(center), float(r), chart)
