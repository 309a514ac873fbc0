"""Pure numpy implementations of the hot kernels.

These must return results bit-identical to ``_ckernels``: squared distances
are accumulated dimension by dimension in the same order, and distances are
compared after a correctly rounded ``sqrt``.
"""
import numpy as np


def _sq_dist(points, centre):
    acc = np.zeros(len(points))
    for j in range(points.shape[1]):
        diff = points[:, j] - centre[j]
        acc += diff * diff
    return acc


def greedy_scan(points, th, k, chosen):
    """Accept rows of ``points`` in order while they stay more than ``th`` away.

    ``chosen`` holds rows accepted by an earlier pass; they count as
    centroids from the start. Returns the full list of accepted rows, which
    may be shorter than ``k`` if the rows run out.
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    chosen = [int(c) for c in chosen]
    mind = np.full(len(points), np.inf)
    for c in chosen:
        np.minimum(mind, np.sqrt(_sq_dist(points, points[c])), out=mind)
    # the first row farther than th from every accepted row is exactly the
    # row a sequential scan would accept next
    while len(chosen) < k:
        hits = np.flatnonzero(mind > th)
        if hits.size == 0:
            break
        nxt = int(hits[0])
        chosen.append(nxt)
        np.minimum(mind, np.sqrt(_sq_dist(points, points[nxt])), out=mind)
    return np.asarray(chosen, dtype=np.int64)


def assign(points, centroids):
    """Nearest centroid per point (ties to the lowest index) and its squared distance."""
    points = np.ascontiguousarray(points, dtype=np.float64)
    centroids = np.ascontiguousarray(centroids, dtype=np.float64)
    d2 = np.empty((len(points), len(centroids)))
    for c in range(len(centroids)):
        d2[:, c] = _sq_dist(points, centroids[c])
    labels = np.argmin(d2, axis=1).astype(np.intp)
    return labels, d2[np.arange(len(points)), labels]
