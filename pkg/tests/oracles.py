"""Slow, independent reference implementations used as test oracles."""
import math
from collections import Counter

import numpy as np

from entroseed.entropy import entropy


def counted_probabilities(grid):
    """Per-pixel product probabilities from plain Counter histograms."""
    px = [tuple(int(v) for v in row) for row in grid.pixels()]
    n = len(px)
    marg = [Counter(t[c] for t in px) for c in range(grid.channels)]
    probs = {}
    for t in set(px):
        p = marg[0][t[0]] / n
        for c in range(1, grid.channels):
            p = p * (marg[c][t[c]] / n)
        probs[t] = p
    return px, probs


def shannon_pixel_scores(grid):
    px, probs = counted_probabilities(grid)
    return [-probs[t] * math.log2(probs[t]) for t in px]


def loo_pixel_scores(grid, spec):
    """H(T) - H(T without t), each side evaluated from scratch."""
    px, probs = counted_probabilities(grid)
    tuples = sorted(probs)
    full = entropy([probs[t] for t in tuples], spec)
    per_tuple = {}
    for t in tuples:
        rest = [probs[u] for u in tuples if u != t]
        per_tuple[t] = full - (entropy(rest, spec) if rest else 0.0)
    return [per_tuple[t] for t in px]


def greedy_seed(grid, scores, k, th, strict):
    """Step-by-step greedy selection over the score-sorted pixel list.

    Returns (pixel indices, effective th) or raises LookupError on exhaustion.
    """
    px = [tuple(float(v) for v in row) for row in grid.pixels()]
    order = sorted(range(len(px)), key=lambda i: (-scores[i], i))
    chosen = []

    def scan(th):
        for i in order:
            if len(chosen) == k:
                return
            if all(math.sqrt(sum((a - b) ** 2 for a, b in zip(px[i], px[j]))) > th for j in chosen):
                chosen.append(i)

    scan(th)
    while len(chosen) < k:
        if strict:
            raise LookupError(len(chosen))
        th /= 2
        if th < 1:
            raise LookupError(len(chosen))
        scan(th)
    return chosen, th


def best_partition_sse(points, k):
    """Global minimum SSE over every assignment of points to at most k clusters."""
    x = np.asarray(points, dtype=float)
    n = len(x)
    labels = np.indices((k,) * n).reshape(n, -1).T  # (k**n, n)
    total = (x ** 2).sum()
    explained = np.zeros(len(labels))
    for c in range(k):
        mask = (labels == c).astype(float)
        cnt = mask.sum(axis=1)
        s = mask @ x
        with np.errstate(invalid="ignore", divide="ignore"):
            explained += np.where(cnt > 0, (s ** 2).sum(axis=1) / cnt, 0.0)
    return float(total - explained.max())


def sequential_mean(rows):
    """Column means with plain left-to-right summation."""
    d = len(rows[0])
    return [sum((r[j] for r in rows), 0.0) / len(rows) for j in range(d)]
