"""Reference measures: the empirical pullback measure and the exact circle measure."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..dynamics import AlgebraicPoint, ProjPoint, RationalMap, exceptional_set, sorted_roots
from ..errors import ExceptionalPointError

DEFAULT_START = complex(0.3141, 0.2718)


@dataclass(frozen=True)
class EmpiricalMeasure:
    """Uniformly weighted point cloud in the affine chart (infinity as complex inf)."""

    samples: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.samples) < 1:
            raise ValueError("an empirical measure needs at least one sample")

    @property
    def N(self) -> int:
        return len(self.samples)

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.N, 1.0 / self.N)

    def integrate(self, phi) -> float:
        return float(np.mean(phi(self.samples)))


@dataclass(frozen=True)
class CircleMeasure:
    """Normalized arc length on |z| = radius (the equilibrium measure of z^d)."""

    radius: float = 1.0
    nodes: int = 1 << 14

    def integrate(self, phi) -> float:
        t = 2 * np.pi * np.arange(self.nodes) / self.nodes
        return float(np.mean(phi(self.radius * np.exp(1j * t))))


def _preimages(f: RationalMap, w: np.ndarray) -> np.ndarray:
    """All d preimages of each w (shape (len(w), d)); infinity as complex inf."""
    d = f.d
    F = np.array(f.f_ints, dtype=float)
    G = np.array(f.g_ints, dtype=float)
    finite = np.isfinite(w)
    # coefficients of F(z,1) - w G(z,1), lowest degree first; G alone when w = inf
    wf = np.where(finite, w, 0)
    c = F[None, :] - wf[:, None] * G[None, :]
    c[~finite] = G[None, :]
    out = np.empty((len(w), d), dtype=complex)
    lead = np.abs(c[:, -1])
    scale = np.abs(c).max(axis=1)
    regular = lead > 1e-13 * scale
    if regular.any():
        cr = c[regular]
        comp = np.zeros((len(cr), d, d), dtype=complex)
        comp[:, 1:, :-1] = np.eye(d - 1)
        comp[:, :, -1] = -cr[:, :-1] / cr[:, -1:]
        out[regular] = np.linalg.eigvals(comp)
    if (~regular).any():
        # a root near infinity: solve the reversed polynomial in s = 1/z
        cr = c[~regular][:, ::-1]
        lead_r = cr[:, -1]
        comp = np.zeros((len(cr), d, d), dtype=complex)
        comp[:, 1:, :-1] = np.eye(d - 1)
        with np.errstate(all="ignore"):
            comp[:, :, -1] = -cr[:, :-1] / lead_r[:, None]
            s = np.linalg.eigvals(comp)
            out[~regular] = np.where(np.abs(s) > 0, 1 / s, np.inf)
    return out


def _check_start(f: RationalMap, z0: complex):
    for e in exceptional_set(f):
        if isinstance(e, ProjPoint):
            val = math.inf if e.is_infinity else float(e.x)
            if (math.isinf(val) and math.isinf(abs(z0))) or abs(z0 - val) < 1e-12:
                raise ExceptionalPointError(f"start point {z0} is exceptional")
        elif isinstance(e, AlgebraicPoint):
            if any(abs(z0 - r) < 1e-9 for r in sorted_roots(e.minpoly)):
                raise ExceptionalPointError(f"start point {z0} is exceptional")


def sample_equilibrium(f: RationalMap, N: int = 10_000, burn_in: int = 30, seed: int = 0,
                       start: complex = DEFAULT_START, method: str = "tree") -> EmpiricalMeasure:
    """N endpoints of burn_in random inverse-branch steps from ``start``.

    method="iid": N independent chains.
    method="tree": one random path for the first steps, then the last
    k = ceil(log_d N) steps enumerate the whole preimage tree, of which N
    points are kept at evenly spaced positions. This is the normalized
    pullback of a point mass and has far less sampling noise.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if burn_in < 0:
        raise ValueError("burn_in must be >= 0")
    z0 = complex(start)
    _check_start(f, z0)
    rng = np.random.default_rng(seed)
    d = f.d
    if method == "iid":
        z = np.full(N, z0, dtype=complex)
        for _ in range(burn_in):
            pre = _preimages(f, z)
            pick = rng.integers(d, size=N)
            z = pre[np.arange(N), pick]
    elif method == "tree":
        k = min(burn_in, max(1, math.ceil(math.log(N, d))))
        w = np.array([z0], dtype=complex)
        for _ in range(burn_in - k):
            w = _preimages(f, w)[:, rng.integers(d)]
        for _ in range(k):
            w = _preimages(f, w).reshape(-1)
        idx = (np.arange(N) * len(w)) // N
        z = w[idx]
    else:
        raise ValueError(f"unknown sampling method {method!r}")
    meta = {"map": f.to_json(), "sampler": method, "burn_in": burn_in, "seed": seed, "start": [z0.real, z0.imag]}
    return EmpiricalMeasure(z, meta)
