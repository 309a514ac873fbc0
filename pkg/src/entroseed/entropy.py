"""Shannon and five parametric entropy families.

Each measure is written as a set of per-term accumulators combined by a
closed-form expression. That split is what lets :func:`pixel_scores`
evaluate "total entropy minus entropy without this tuple" for every
distinct tuple in linear time.

Logarithms: base 2 for Shannon and Kapur, natural log inside the
trigonometric arguments of Aczel-Daroczy and Taneja.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ingest import PixelGrid
from .pixel_model import support_distribution

MEASURES = ("shannon", "kapur", "aczel-daroczy", "havrda-charvat", "taneja", "sharma-mittal")

DEFAULT_ALPHA = 2.0
DEFAULT_BETA = {
    "kapur": 2.0,
    "aczel-daroczy": 0.5,
    "taneja": 1.0,
    "sharma-mittal": 2.0,
}
SINGULAR_RTOL = 1e-12
SUM_FORM = ("shannon", "havrda-charvat", "taneja")

_ALIASES = {
    "aczeldaroczy": "aczel-daroczy",
    "havrdacharvat": "havrda-charvat",
    "sharmamittal": "sharma-mittal",
}


class EntropyDomainError(ValueError):
    """Parameters or probabilities outside a measure's domain."""


class SingularityError(EntropyDomainError):
    """A denominator of the Aczel-Daroczy ratio vanished."""


def canonical_measure(name: str) -> str:
    key = name.strip().lower().replace("_", "-").replace(" ", "-")
    key = key.replace("é", "e").replace("á", "a")
    key = _ALIASES.get(key.replace("-", ""), key)
    if key not in MEASURES:
        raise EntropyDomainError(
            f"unknown measure {name!r}; expected one of {', '.join(MEASURES)}"
        )
    return key


@dataclass(frozen=True)
class EntropySpec:
    """A measure name plus its (alpha, beta) parameters.

    Missing parameters are filled with the documented defaults; parameters a
    measure does not use are stored as ``None``.
    """

    measure: str
    alpha: float | None = None
    beta: float | None = None

    def __post_init__(self):
        m = canonical_measure(self.measure)
        alpha, beta = self.alpha, self.beta
        if m == "shannon":
            alpha = beta = None
        else:
            alpha = DEFAULT_ALPHA if alpha is None else float(alpha)
            if m == "havrda-charvat":
                beta = None
            else:
                beta = DEFAULT_BETA[m] if beta is None else float(beta)
        object.__setattr__(self, "measure", m)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def label(self) -> str:
        if self.measure == "shannon":
            return "shannon"
        if self.beta is None:
            return f"{self.measure}(a={self.alpha:g})"
        return f"{self.measure}(a={self.alpha:g},b={self.beta:g})"


def validate(spec: EntropySpec) -> list[str]:
    """Return the violated constraints of ``spec``; an empty list means valid."""
    m, a, b = spec.measure, spec.alpha, spec.beta
    out = []
    if m == "shannon":
        return out

    def bad(constraint, **vals):
        shown = ", ".join(f"{k}={v:g}" for k, v in vals.items())
        out.append(f"{m}: constraint {constraint} violated ({shown})")

    if not math.isfinite(a) or (b is not None and not math.isfinite(b)):
        out.append(f"{m}: parameters must be finite")
        return out
    if a <= 0:
        bad("α > 0", α=a)
    if m in ("kapur", "havrda-charvat", "sharma-mittal") and a == 1:
        bad("α ≠ 1", α=a)
    if m == "kapur" and b < 1:
        bad("β ≥ 1", β=b)
    if m == "aczel-daroczy" and b == 0:
        bad("β ≠ 0", β=b)
    if m == "taneja":
        if b <= 0:
            bad("β > 0", β=b)
        elif abs(math.sin(b)) < 1e-12:
            bad("β ≠ kπ", β=b)
    if m == "sharma-mittal":
        if b <= 0:
            bad("β > 0", β=b)
        if b == 1:
            bad("β ≠ 1", β=b)
    return out


def _check(spec: EntropySpec) -> None:
    problems = validate(spec)
    if problems:
        raise EntropyDomainError("; ".join(problems))


def probability_vector(values) -> np.ndarray:
    """Validate ``values`` as strictly positive probabilities summing to <= 1."""
    p = np.asarray(values, dtype=np.float64).reshape(-1)
    if p.size == 0:
        raise EntropyDomainError("probability vector is empty")
    if not np.all(np.isfinite(p)) or np.any(p <= 0) or np.any(p > 1):
        raise EntropyDomainError("probabilities must lie in (0, 1]; drop zero entries first")
    if p.sum() > 1 + 1e-9:
        raise EntropyDomainError(f"probabilities sum to {p.sum():.12g} > 1")
    return p


# --- accumulator forms -----------------------------------------------------
#
# _terms returns one column per inner sum; _combine maps the column sums
# (shape (..., q)) to the entropy value.

def _terms(p: np.ndarray, spec: EntropySpec) -> np.ndarray:
    m, a, b = spec.measure, spec.alpha, spec.beta
    if m == "shannon":
        # libm log2: numpy's vectorised log2 is not correctly rounded everywhere
        log2p = np.fromiter((math.log2(x) for x in p.tolist()), np.float64, count=p.size)
        cols = [-p * log2p]
    elif m == "kapur":
        cols = [p ** (a + b - 1), p ** b]
    elif m == "aczel-daroczy":
        pa, ang = p ** a, b * np.log(p)
        cols = [pa * np.sin(ang), pa * np.cos(ang), pa]
    elif m == "havrda-charvat":
        cols = [p ** a]
    elif m == "taneja":
        cols = [p ** a * np.sin(b * np.log(p))]
    else:  # sharma-mittal
        cols = [p ** b]
    return np.stack(cols, axis=-1)


def _combine(sums: np.ndarray, spec: EntropySpec) -> np.ndarray:
    m, a, b = spec.measure, spec.alpha, spec.beta
    s0 = sums[..., 0]
    if m == "shannon":
        return s0
    if m == "kapur":
        return np.log2(s0 / sums[..., 1]) / (1 - a)
    if m == "aczel-daroczy":
        den = sums[..., 1]
        # relative to sum(p^a), the largest value |den| could take
        if np.any(np.abs(den) <= SINGULAR_RTOL * sums[..., 2]):
            raise SingularityError("aczel-daroczy: Σ p^α cos(β ln p) = 0")
        return np.arctan(s0 / den) / b
    if m == "havrda-charvat":
        return (s0 - 1) / (2.0 ** (1 - a) - 1)
    if m == "taneja":
        return -(2.0 ** (a - 1) / math.sin(b)) * s0
    return (s0 ** ((a - 1) / (b - 1)) - 1) / (2.0 ** (1 - a) - 1)


def entropy(p, spec: EntropySpec) -> float:
    """Evaluate the measure named by ``spec`` on probability vector ``p``."""
    _check(spec)
    p = probability_vector(p)
    return float(_combine(_terms(p, spec).sum(axis=0), spec)) + 0.0  # no -0.0


def shannon(p) -> float:
    """Shannon entropy in bits."""
    return entropy(p, EntropySpec("shannon"))


def kapur(p, alpha: float, beta: float) -> float:
    return entropy(p, EntropySpec("kapur", alpha, beta))


def aczel_daroczy(p, alpha: float, beta: float) -> float:
    """May be negative; the arctan is used as-is, not shifted by a branch."""
    return entropy(p, EntropySpec("aczel-daroczy", alpha, beta))


def havrda_charvat(p, alpha: float) -> float:
    return entropy(p, EntropySpec("havrda-charvat", alpha))


def taneja(p, alpha: float, beta: float) -> float:
    return entropy(p, EntropySpec("taneja", alpha, beta))


def sharma_mittal(p, alpha: float, beta: float) -> float:
    return entropy(p, EntropySpec("sharma-mittal", alpha, beta))


def tuple_scores(probabilities: np.ndarray, spec: EntropySpec) -> np.ndarray:
    """Leave-one-out contribution ``H(T) - H(T without t)`` for each term.

    Sum-form measures reduce to their summand and are returned as such. For
    the ratio and power forms the sums over the remaining terms come from
    prefix/suffix cumulative sums, which avoids the cancellation that
    ``total - term`` suffers when one term dominates. With a single term the
    remainder is empty and its entropy is taken as 0.
    """
    _check(spec)
    p = np.asarray(probabilities, dtype=np.float64)
    terms = _terms(p, spec)
    m, a, b = spec.measure, spec.alpha, spec.beta
    if m == "shannon":
        return terms[:, 0]
    if m == "havrda-charvat":
        return terms[:, 0] / (2.0 ** (1 - a) - 1)
    if m == "taneja":
        return -(2.0 ** (a - 1) / math.sin(b)) * terms[:, 0]

    total = _combine(terms.sum(axis=0), spec)
    if len(p) == 1:
        return np.array([float(total)])
    zero = np.zeros((1, terms.shape[1]))
    prefix = np.concatenate([zero, np.cumsum(terms, axis=0)[:-1]])
    suffix = np.concatenate([np.cumsum(terms[::-1], axis=0)[::-1][1:], zero])
    rest = _combine(prefix + suffix, spec)
    return total - rest


def pixel_scores(grid: PixelGrid, spec: EntropySpec) -> np.ndarray:
    """Per-pixel entropy score, length ``width * height`` in row-major order.

    Pixels sharing an intensity tuple share a score.
    """
    support = support_distribution(grid)
    return tuple_scores(support.probabilities, spec)[support.pixel_index]
