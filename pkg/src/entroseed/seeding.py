"""Initial centroid selection: entropy-ranked greedy seeding and a random baseline."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .entropy import EntropySpec, EntropyDomainError, pixel_scores, validate
from .ingest import PixelGrid

STRICT = "strict"
ADAPTIVE = "adaptive"


class SeedExhaustionError(RuntimeError):
    """The sorted pixel list ran out before ``k`` centroids were accepted."""

    def __init__(self, found, k, th):
        self.found, self.k, self.th = found, k, th
        super().__init__(
            f"only {found} of {k} centroids could be placed more than th={th:g} apart"
        )


def default_threshold(channels: int) -> float:
    """Half the intensity-space diameter: about 220.8 for RGB, 127.5 for gray."""
    return 0.5 * 255.0 * math.sqrt(channels)


@dataclass(frozen=True)
class SeedingConfig:
    k: int
    spec: EntropySpec = field(default_factory=lambda: EntropySpec("shannon"))
    th: float | None = None
    exhaustion_policy: str = ADAPTIVE

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")
        if self.th is not None and not self.th >= 0:
            raise ValueError(f"th must be non-negative, got {self.th}")
        if self.exhaustion_policy not in (STRICT, ADAPTIVE):
            raise ValueError(f"unknown exhaustion policy {self.exhaustion_policy!r}")


@dataclass(frozen=True, eq=False)
class CentroidSet:
    points: np.ndarray            # (k, channels) float64, intensity units
    method_tag: str
    effective_th: float | None    # None for the random baseline
    init_time: float              # seconds
    pixel_indices: np.ndarray     # row-major index of the source pixel per centroid

    def __len__(self):
        return len(self.points)

    def min_spacing(self) -> float:
        if len(self.points) < 2:
            return math.inf
        diff = self.points[:, None, :] - self.points[None, :, :]
        dist = np.sqrt((diff ** 2).sum(axis=-1))
        return float(dist[np.triu_indices(len(self.points), 1)].min())


def score_order(scores: np.ndarray) -> np.ndarray:
    """Pixel indices by descending score; equal scores keep row-major order."""
    return np.argsort(-scores, kind="stable")


def entropy_seed(grid: PixelGrid, config: SeedingConfig, backend: str | None = None) -> CentroidSet:
    """Pick ``config.k`` seeds by descending entropy score with a spacing threshold.

    Pixels are visited from highest to lowest score. The first is always
    accepted; any later pixel is accepted only when its Euclidean distance in
    intensity space to every accepted seed is strictly greater than ``th``.

    When the list runs out, the ``strict`` policy raises
    :class:`SeedExhaustionError`. The ``adaptive`` policy halves ``th`` and
    rescans from the top, keeping what was already accepted, until ``k``
    seeds are found or ``th`` drops below 1.
    """
    t0 = time.perf_counter()
    problems = validate(config.spec)
    if problems:
        raise EntropyDomainError("; ".join(problems))
    kern = _backend.get(backend)
    th = default_threshold(grid.channels) if config.th is None else float(config.th)

    scores = pixel_scores(grid, config.spec)
    order = score_order(scores)
    ranked = grid.pixels()[order].astype(np.float64)

    chosen = kern.greedy_scan(ranked, th, config.k, [])
    while len(chosen) < config.k:
        if config.exhaustion_policy == STRICT:
            raise SeedExhaustionError(len(chosen), config.k, th)
        th /= 2
        if th < 1:
            raise SeedExhaustionError(len(chosen), config.k, th)
        chosen = kern.greedy_scan(ranked, th, config.k, chosen)

    return CentroidSet(
        points=ranked[chosen],
        method_tag=config.spec.label,
        effective_th=th,
        init_time=time.perf_counter() - t0,
        pixel_indices=order[chosen],
    )


def random_seed(grid: PixelGrid, k: int, rng_seed: int) -> CentroidSet:
    """``k`` distinct pixel positions drawn uniformly without replacement."""
    t0 = time.perf_counter()
    if k < 1 or k > grid.n_pixels:
        raise ValueError(f"k={k} must lie in [1, {grid.n_pixels}] for this grid")
    rng = np.random.default_rng(rng_seed)
    idx = rng.choice(grid.n_pixels, size=k, replace=False)
    return CentroidSet(
        points=grid.pixels()[idx].astype(np.float64),
        method_tag="random",
        effective_th=None,
        init_time=time.perf_counter() - t0,
        pixel_indices=idx.astype(np.int64),
    )
