"""Lloyd's k-means with iteration count, SSE trace and timing."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import _backend

RESEED_FARTHEST = "reseed_farthest"
DROP_ERROR = "drop_error"


class EmptyClusterError(RuntimeError):
    pass


@dataclass(frozen=True)
class KMeansConfig:
    max_iter: int = 300
    tol: float = 1e-4
    empty_cluster_policy: str = RESEED_FARTHEST

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if not self.tol >= 0:
            raise ValueError("tol must be >= 0")
        if self.empty_cluster_policy not in (RESEED_FARTHEST, DROP_ERROR):
            raise ValueError(f"unknown empty-cluster policy {self.empty_cluster_policy!r}")


@dataclass(frozen=True, eq=False)
class KMeansResult:
    centroids: np.ndarray
    labels: np.ndarray
    sse: float
    nik: int
    compute_time: float
    sse_history: list = field(default_factory=list)
    converged: bool = True

    @property
    def k(self):
        return len(self.centroids)


def as_points(points) -> np.ndarray:
    x = np.asarray(points, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise ValueError(f"points must be 1-D or 2-D, got shape {x.shape}")
    return np.ascontiguousarray(x)


def sse(points, centroids, labels) -> float:
    """Sum of squared distances from each point to its assigned centroid."""
    x = as_points(points)
    c = as_points(centroids)
    labels = np.asarray(labels)
    if labels.shape != (len(x),):
        raise ValueError(f"expected {len(x)} labels, got shape {labels.shape}")
    if x.shape[1] != c.shape[1]:
        raise ValueError(f"points have dimension {x.shape[1]}, centroids {c.shape[1]}")
    if len(x) and (labels.min() < 0 or labels.max() >= len(c)):
        raise ValueError("label out of range")
    diff = x - c[labels]
    return float((diff * diff).sum())


def _update(x, labels, k):
    counts = np.bincount(labels, minlength=k)
    sums = np.stack([np.bincount(labels, weights=x[:, j], minlength=k) for j in range(x.shape[1])], axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        return sums / counts[:, None], counts


def _reseed_empty(x, labels, d2, counts, policy):
    empty = np.flatnonzero(counts == 0)
    if empty.size == 0:
        return labels, d2
    if policy == DROP_ERROR:
        raise EmptyClusterError(f"clusters {empty.tolist()} lost all their points")
    labels, d2, counts = labels.copy(), d2.copy(), counts.copy()
    for c in empty:
        # the point worst served by its centroid becomes the new one, taken
        # from a cluster that keeps at least one member
        movable = np.where(counts[labels] > 1, d2, -np.inf)
        far = int(np.argmax(movable))
        counts[labels[far]] -= 1
        counts[c] += 1
        labels[far] = c
        d2[far] = 0.0
    return labels, d2


def fit(points, init, config: KMeansConfig | None = None, backend: str | None = None) -> KMeansResult:
    """Run Lloyd iterations from ``init`` (a CentroidSet or an array).

    One round is an assignment (nearest centroid, ties to the lowest index)
    followed by a mean update. Iteration stops after the first round whose
    assignments equal the previous round's, whose largest centroid shift is
    at most ``tol``, or when ``max_iter`` rounds have run. ``nik`` counts
    rounds including the confirming one.
    """
    config = config or KMeansConfig()
    kern = _backend.get(backend)
    t0 = time.perf_counter()
    x = as_points(points)
    c = as_points(getattr(init, "points", init)).copy()
    if len(x) == 0:
        raise ValueError("no points to cluster")
    if x.shape[1] != c.shape[1]:
        raise ValueError(f"points have dimension {x.shape[1]}, centroids {c.shape[1]}")
    k = len(c)
    if k < 1 or len(x) < k:
        raise ValueError(f"need 1 <= k <= n_points, got k={k}, n={len(x)}")

    prev = None
    history = []
    converged = False
    nik = 0
    labels = None
    for nik in range(1, config.max_iter + 1):
        labels, d2 = kern.assign(x, c)
        counts = np.bincount(labels, minlength=k)
        if np.any(counts == 0):
            labels, d2 = _reseed_empty(x, labels, d2, counts, config.empty_cluster_policy)
        new_c, _ = _update(x, labels, k)
        shift = float(np.sqrt(((new_c - c) ** 2).sum(axis=1)).max())
        c = new_c
        history.append(sse(x, c, labels))
        if (prev is not None and np.array_equal(labels, prev)) or shift <= config.tol:
            converged = True
            break
        prev = labels

    return KMeansResult(
        centroids=c,
        labels=labels,
        sse=history[-1],
        nik=nik,
        compute_time=time.perf_counter() - t0,
        sse_history=history,
        converged=converged,
    )
