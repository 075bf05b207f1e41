"""Greedy selection of cubes with large measure and pairwise disjoint dilates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import MeasureFloorError

REGION = 2.0  # cubes partition [-2, 2]^(2k)


@dataclass(frozen=True)
class Cube:
    center: tuple
    side: float


@dataclass(frozen=True)
class CubeSelection:
    cubes: tuple
    measures: tuple
    floor: float
    delta: float
    side: float
    trace: tuple


def _real_coords(samples) -> np.ndarray:
    s = np.asarray(samples)
    if np.iscomplexobj(s):
        if s.ndim == 1:
            s = s[:, None]
        return np.concatenate([s.real, s.imag], axis=1)
    s = np.asarray(s, dtype=float)
    return s[:, None] if s.ndim == 1 else s


def greedy_cubes(mu, D: int, dilate: int = 2, kappa: float = 1.0, c_prime: float = 1.0) -> CubeSelection:
    """D cubes of side s = c' D^(-2 kappa), chosen greedily by empirical measure.

    The grid partitions [-2, 2]^(2k). Each step takes the heaviest cube whose
    dilate (same center, side times ``dilate``) is disjoint from the dilates
    already chosen. Every chosen cube must carry at least

        floor = delta (c'/2)^(2k) D^(-4 k kappa) / 2,

    where delta is the mass of the unit polydisc, which is covered by
    (2/s)^(2k) grid cells; otherwise MeasureFloorError with the trace.
    """
    if D < 1:
        raise ValueError("D must be >= 1")
    if kappa <= 0 or c_prime <= 0:
        raise ValueError("kappa and c' must be positive")
    samples = getattr(mu, "samples", mu)
    x = _real_coords(samples)
    N, dim = x.shape
    k = dim // 2
    side = c_prime * D ** (-2 * kappa)
    cells = int(np.ceil(2 * REGION / side))
    inside = np.all(np.isfinite(x) & (x >= -REGION) & (x < REGION), axis=1)
    with np.errstate(invalid="ignore"):
        radii = np.hypot(x[:, :k], x[:, k:2 * k]) if k else np.zeros((N, 0))
    delta = float(np.all(radii < 1, axis=1).sum()) / N
    floor = delta * (c_prime / 2) ** (2 * k) * D ** (-4 * k * kappa) / 2
    idx = np.floor((x[inside] + REGION) / side).astype(np.int64)
    idx = np.minimum(idx, cells - 1)
    keys, counts = np.unique(idx, axis=0, return_counts=True)
    order = np.lexsort(tuple(keys[:, j] for j in range(dim - 1, -1, -1)) + (-counts,))
    chosen: list[np.ndarray] = []
    measures = []
    trace = []
    # gap needed between cell indices so that the dilates do not overlap
    gap = dilate
    for i in order:
        if len(chosen) == D:
            break
        key = keys[i]
        m = counts[i] / N
        if chosen and np.any(np.max(np.abs(np.array(chosen) - key), axis=1) < gap):
            continue
        if m < floor:
            trace.append((tuple(int(v) for v in key), float(m), "below floor"))
            raise MeasureFloorError(
                f"cube {len(chosen) + 1} of {D} has measure {m:.3g} < floor {floor:.3g}",
                tuple(trace),
            )
        chosen.append(key)
        measures.append(float(m))
        trace.append((tuple(int(v) for v in key), float(m), "chosen"))
    if len(chosen) < D:
        raise MeasureFloorError(
            f"only {len(chosen)} of {D} cubes with disjoint dilates carry positive measure",
            tuple(trace),
        )
    cubes = tuple(
        Cube(tuple(float(-REGION + (v + 0.5) * side) for v in key), side) for key in chosen
    )
    return CubeSelection(cubes, tuple(measures), float(floor), float(delta), side, tuple(trace))


def dilates_disjoint(cubes, dilate: int) -> bool:
    """Pairwise disjointness of the (half-open) dilated cubes."""
    c = np.array([cube.center for cube in cubes])
    s = cubes[0].side if cubes else 0
    for i in range(len(c)):
        for j in range(i + 1, len(c)):
            if np.max(np.abs(c[i] - c[j])) < dilate * s * (1 - 1e-12):
                return False
    return True
