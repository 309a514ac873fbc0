"""Per-channel histograms and the independent-channel pixel probability.

A pixel with intensities ``(a, b, c)`` is assigned
``P = (n_a/N) * (n_b/N) * (n_c/N)`` where ``n_x`` counts occurrences of
intensity ``x`` in that channel and ``N`` is the pixel count. The product is
evaluated left to right so every caller gets bit-identical values.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ingest import PixelGrid

N_LEVELS = 256


@dataclass(frozen=True, eq=False)
class ChannelHistogram:
    counts: np.ndarray  # int64, length 256
    total: int

    def frequency(self, value: int) -> float:
        return self.counts[value] / self.total


@dataclass(frozen=True, eq=False)
class SupportDistribution:
    """Distinct intensity tuples present in a grid, sorted lexicographically.

    ``pixel_index`` maps each pixel (row-major) to its entry, so per-tuple
    quantities can be broadcast back to pixels with ``values[pixel_index]``.
    """

    tuples: np.ndarray          # (m, channels) uint8
    probabilities: np.ndarray   # (m,) float64
    multiplicities: np.ndarray  # (m,) int64
    pixel_index: np.ndarray     # (n_pixels,) intp

    def __len__(self):
        return len(self.probabilities)

    @property
    def entries(self) -> list[tuple[tuple[int, ...], float, int]]:
        return [
            (tuple(int(v) for v in t), float(p), int(m))
            for t, p, m in zip(self.tuples, self.probabilities, self.multiplicities)
        ]


def channel_histograms(grid: PixelGrid) -> list[ChannelHistogram]:
    px = grid.pixels()
    return [
        ChannelHistogram(np.bincount(px[:, c], minlength=N_LEVELS).astype(np.int64), grid.n_pixels)
        for c in range(grid.channels)
    ]


def pixel_probability(histograms: list[ChannelHistogram], pixel) -> float:
    """Product of the per-channel marginal frequencies of ``pixel``.

    Absent tuples still get mass as long as every component occurs in its
    channel; a component that never occurs gives 0.
    """
    pixel = tuple(pixel)
    if len(pixel) != len(histograms):
        raise ValueError(f"pixel has {len(pixel)} components, expected {len(histograms)}")
    p = 1.0
    for i, (hist, value) in enumerate(zip(histograms, pixel)):
        if not 0 <= value < N_LEVELS:
            raise ValueError(f"intensity {value} outside [0, 255]")
        f = hist.counts[value] / hist.total
        p = f if i == 0 else p * f
    return float(p)


def _pack(px: np.ndarray) -> np.ndarray:
    codes = np.zeros(len(px), dtype=np.int64)
    for c in range(px.shape[1]):
        codes = (codes << 8) | px[:, c]
    return codes


def support_distribution(grid: PixelGrid) -> SupportDistribution:
    px = grid.pixels()
    hists = channel_histograms(grid)
    # packed big-endian codes sort exactly like the tuples themselves
    codes, first, inverse, mult = np.unique(
        _pack(px), return_index=True, return_inverse=True, return_counts=True
    )
    tuples = px[first]
    probs = None
    for c, hist in enumerate(hists):
        f = hist.counts[tuples[:, c]] / hist.total
        probs = f if probs is None else probs * f
    return SupportDistribution(
        tuples=tuples,
        probabilities=np.asarray(probs, dtype=np.float64),
        multiplicities=mult.astype(np.int64),
        pixel_index=inverse.reshape(-1),
    )
