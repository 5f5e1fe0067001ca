"""Distribution post-processing: envelope smoothing, peak finding, symmetry checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .state import ProbabilityDistribution

__all__ = [
    "PeakReport",
    "smooth_distribution",
    "find_peaks",
    "analyze_peaks",
    "symmetry_deviation",
]


def _check_single_parity(dist: ProbabilityDistribution) -> None:
    positions = dist.positions
    if positions.size > 1 and len({int(x) & 1 for x in positions}) != 1:
        raise ValueError("distribution must be supported on a single parity class")


def smooth_distribution(dist: ProbabilityDistribution, window: int) -> ProbabilityDistribution:
    """Moving average over neighboring support points, renormalized to sum 1.

    ``window`` must be odd; near the edges it is truncated symmetrically so
    every point stays centered in its own average (the first and last points
    are left as they are).  ``window=1`` returns the input unchanged.
    """
    if window < 1 or window % 2 == 0:
        raise ValueError(f"window must be an odd positive integer, got {window}")
    _check_single_parity(dist)
    if window == 1:
        return ProbabilityDistribution(dist.positions.copy(), dist.probabilities.copy())
    p = dist.probabilities
    n = p.size
    half = window // 2
    out = np.empty_like(p)
    for i in range(n):
        k = min(half, i, n - 1 - i)
        out[i] = p[i - k : i + k + 1].mean()
    out = out / out.sum()
    return ProbabilityDistribution(dist.positions.copy(), out)


@dataclass(frozen=True)
class PeakReport:
    """Detected peaks sorted by position, plus the settings that produced them."""

    peaks: tuple[tuple[int, float], ...]
    window: int
    prominence: float

    @property
    def positions(self) -> list[int]:
        return [x for x, _ in self.peaks]

    @property
    def heights(self) -> list[float]:
        return [h for _, h in self.peaks]


def find_peaks(
    dist: ProbabilityDistribution, prominence_fraction: float, window: int = 1
) -> PeakReport:
    """Local maxima at least ``prominence_fraction`` of the global maximum.

    A support point counts when it is strictly higher than both neighbors on
    the support grid; a flat run higher than its surroundings counts once, at
    its leftmost point, and runs touching an edge need only fall off on the
    inner side.  ``window`` is recorded in the report for provenance, it is
    not applied here; :func:`analyze_peaks` runs the smooth-then-detect
    pipeline.
    """
    if not 0.0 < prominence_fraction < 1.0:
        raise ValueError(
            f"prominence_fraction must be in (0, 1), got {prominence_fraction}"
        )
    _check_single_parity(dist)
    p = dist.probabilities
    n = p.size
    top = float(p.max())
    if top <= 0.0:
        raise ValueError("distribution has no probability mass")
    floor = prominence_fraction * top
    peaks: list[tuple[int, float]] = []
    i = 0
    while i < n:
        j = i
        while j + 1 < n and p[j + 1] == p[i]:
            j += 1
        rises_left = i == 0 or p[i - 1] < p[i]
        falls_right = j == n - 1 or p[j + 1] < p[i]
        if rises_left and falls_right and p[i] >= floor:
            peaks.append((int(dist.positions[i]), float(p[i])))
        i = j + 1
    return PeakReport(tuple(peaks), window, prominence_fraction)


def analyze_peaks(
    dist: ProbabilityDistribution, window: int = 5, prominence: float = 0.1
) -> PeakReport:
    """Smooth with ``window``, then report peaks above ``prominence`` of the max."""
    return find_peaks(smooth_distribution(dist, window), prominence, window=window)


def symmetry_deviation(dist: ProbabilityDistribution) -> float:
    """Largest absolute difference between the weights at x and at -x."""
    table = dist.as_dict()
    worst = 0.0
    for x, p in table.items():
        worst = max(worst, abs(p - table.get(-x, 0.0)))
    return worst
