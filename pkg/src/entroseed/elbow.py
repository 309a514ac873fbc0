"""Elbow-method k selection from inertia/dispersion curves."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .entropy import EntropySpec
from .ingest import PixelGrid
from .kmeans import KMeansConfig, as_points, fit
from .seeding import SeedingConfig, entropy_seed, random_seed


@dataclass(frozen=True)
class ElbowEntry:
    k: int
    inertia: float
    dispersion: float


@dataclass
class ElbowCurve:
    entries: list[ElbowEntry] = field(default_factory=list)
    seeding_used: str = ""

    @property
    def ks(self):
        return [e.k for e in self.entries]

    @property
    def inertias(self):
        return [e.inertia for e in self.entries]

    def to_text(self, cost: str = "inertia") -> str:
        """Two whitespace-separated columns, ``k`` and the chosen cost."""
        if cost not in ("inertia", "dispersion"):
            raise ValueError(f"unknown cost {cost!r}")
        lines = [f"# k {cost}"]
        lines += [f"{e.k} {getattr(e, cost):.10g}" for e in self.entries]
        return "\n".join(lines) + "\n"


def entropy_seeder(grid: PixelGrid, spec: EntropySpec | None = None, th: float | None = None):
    """Seeder callable ``(k, trial) -> centroids`` using entropy seeding."""
    spec = spec or EntropySpec("shannon")

    def seeder(k, trial=0):
        return entropy_seed(grid, SeedingConfig(k=k, spec=spec, th=th)).points

    seeder.tag = spec.label
    return seeder


def random_seeder(points, rng_seed: int = 0):
    """Seeder drawing ``k`` distinct points; ``trial`` varies the draw."""
    x = as_points(points)

    def seeder(k, trial=0):
        rng = np.random.default_rng([rng_seed, k, trial])
        return x[rng.choice(len(x), size=k, replace=False)]

    seeder.tag = f"random(seed={rng_seed})"
    return seeder


def k_sweep(points, k_range: tuple[int, int], seeder: Callable, kmeans_config: KMeansConfig | None = None,
            n_init: int = 1) -> ElbowCurve:
    """Fit k-means for every k in the inclusive ``k_range``.

    With ``n_init > 1`` each k keeps the lowest-SSE of ``n_init`` seeded fits.
    """
    x = as_points(points)
    k_min, k_max = k_range
    if k_min < 1 or k_max < k_min:
        raise ValueError(f"bad k range {k_range}")
    n_distinct = len(np.unique(x, axis=0))
    if k_max > n_distinct:
        raise ValueError(f"k_max={k_max} exceeds the {n_distinct} distinct points")
    curve = ElbowCurve(seeding_used=getattr(seeder, "tag", getattr(seeder, "__name__", "custom")))
    for k in range(k_min, k_max + 1):
        best = min(
            (fit(x, seeder(k, trial), kmeans_config).sse for trial in range(n_init)),
        )
        curve.entries.append(ElbowEntry(k, best, best / len(x)))
    return curve


def second_differences(curve: ElbowCurve) -> dict[int, float]:
    y = curve.inertias
    return {curve.entries[i].k: y[i - 1] - 2 * y[i] + y[i + 1] for i in range(1, len(y) - 1)}


def detect_elbow(curve: ElbowCurve) -> int | None:
    """Interior k with the largest positive second difference of inertia."""
    if len(curve.entries) < 3:
        raise ValueError("elbow detection needs at least 3 curve entries")
    best_k, best = None, 0.0
    for k, d2 in second_differences(curve).items():
        if d2 > best:
            best_k, best = k, d2
    return best_k
