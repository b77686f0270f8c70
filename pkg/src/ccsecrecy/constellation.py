"""Finite complex constellations, normalized to unit average energy."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ENERGY_TOL = 1e-12
DUPLICATE_TOL = 1e-12


def _min_pairwise_distance(points: np.ndarray) -> float:
    gaps = np.abs(points[:, None] - points[None, :])
    i, j = np.triu_indices(points.size, k=1)
    return float(gaps[i, j].min())


@dataclass(frozen=True, eq=False)
class Constellation:
    """Ordered set of M >= 2 distinct complex points with unit average energy."""

    name: str
    points: np.ndarray

    def __post_init__(self):
        points = np.array(self.points, dtype=np.complex128)
        if points.ndim != 1 or points.size < 2:
            raise ValueError("a constellation needs at least 2 points")
        energy = float(np.mean(np.abs(points) ** 2))
        if abs(energy - 1.0) > ENERGY_TOL:
            raise ValueError(
                f"average energy must be 1, got {energy!r} (off by {energy - 1.0:.3e})"
            )
        gap = _min_pairwise_distance(points)
        if gap <= DUPLICATE_TOL:
            raise ValueError(
                f"duplicate constellation points: minimum pairwise distance {gap:.3e}"
            )
        points.flags.writeable = False
        object.__setattr__(self, "points", points)

    @property
    def size(self) -> int:
        return int(self.points.size)


def make_bpsk() -> Constellation:
    """Antipodal pair {+1, -1}."""
    return Constellation("bpsk", np.array([1.0 + 0.0j, -1.0 + 0.0j]))


def make_psk(m: int) -> Constellation:
    """M unit-modulus points exp(i*2*pi*k/M), k = 0..M-1, in increasing angle."""
    if m < 2:
        raise ValueError(f"PSK size must be at least 2, got {m}")
    phases = 2.0 * np.pi * np.arange(m) / m
    return Constellation(f"psk{m}", np.exp(1j * phases))


def make_qam(m: int) -> Constellation:
    """Square QAM on the odd-integer grid, scaled to unit average energy.

    Points use per-axis levels {+/-1, +/-3, ...} and are ordered
    lexicographically by (real, imag). M must be a perfect square with an
    even side length (4, 16, 64, ...).
    """
    side = math.isqrt(m)
    if side * side != m or side % 2 != 0:
        raise ValueError(
            f"QAM size must be a perfect square with even side, got {m}"
        )
    levels = np.arange(-(side - 1), side, 2, dtype=float)
    re, im = np.meshgrid(levels, levels, indexing="ij")
    raw = (re + 1j * im).ravel()
    scale = math.sqrt(float(np.mean(np.abs(raw) ** 2)))
    return Constellation(f"qam{m}", raw / scale)


def from_points(raw, name: str = "custom") -> Constellation:
    """Build a constellation from arbitrary complex points, normalizing energy.

    Raises if fewer than 2 points are given, if the set has zero total energy,
    or if two points coincide after normalization.
    """
    points = np.asarray(raw, dtype=np.complex128)
    if points.ndim != 1 or points.size < 2:
        raise ValueError("a constellation needs at least 2 points")
    energy = float(np.mean(np.abs(points) ** 2))
    if energy <= 0.0:
        raise ValueError("degenerate constellation: total energy is zero")
    return Constellation(name, points / math.sqrt(energy))


def average_energy(c: Constellation) -> float:
    """Mean of |x|^2 over the constellation (1 by construction)."""
    return float(np.mean(np.abs(c.points) ** 2))


def min_distance(c: Constellation) -> float:
    """Smallest pairwise Euclidean distance between constellation points."""
    return _min_pairwise_distance(c.points)
