import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entroseed.entropy import (
    EntropyDomainError, EntropySpec, MEASURES, SingularityError, aczel_daroczy, entropy,
    havrda_charvat, kapur, pixel_scores, probability_vector, shannon, sharma_mittal, taneja,
    tuple_scores, validate,
)
from entroseed.ingest import PixelGrid

LN_HALF = math.log(0.5)


# --- validation --------------------------------------------------------------

def test_validate_examples():
    msgs = validate(EntropySpec("kapur", 1.0, 1))
    assert len(msgs) == 1 and "α ≠ 1" in msgs[0]
    msgs = validate(EntropySpec("taneja", 1, math.pi))
    assert len(msgs) == 1 and "β ≠ kπ" in msgs[0]
    assert validate(EntropySpec("sharma-mittal", 2, 2)) == []


@pytest.mark.parametrize("measure, alpha, beta, fragment", [
    ("kapur", 0, 2, "α > 0"),
    ("kapur", 2, 0.5, "β ≥ 1"),
    ("aczel-daroczy", 1, 0, "β ≠ 0"),
    ("aczel-daroczy", -1, 1, "α > 0"),
    ("havrda-charvat", 1, None, "α ≠ 1"),
    ("havrda-charvat", -2, None, "α > 0"),
    ("taneja", 1, 2 * math.pi, "β ≠ kπ"),
    ("taneja", 1, -0.5, "β > 0"),
    ("taneja", 0, 1, "α > 0"),
    ("sharma-mittal", 1, 2, "α ≠ 1"),
    ("sharma-mittal", 2, 1, "β ≠ 1"),
    ("sharma-mittal", 2, 0, "β > 0"),
])
def test_validate_violations(measure, alpha, beta, fragment):
    msgs = validate(EntropySpec(measure, alpha, beta))
    assert any(fragment in m for m in msgs), msgs


def test_invalid_spec_raises_on_evaluation():
    with pytest.raises(EntropyDomainError, match="α ≠ 1"):
        kapur([0.5, 0.5], 1, 1)


def test_spec_names_and_defaults():
    assert EntropySpec("Kapur").measure == "kapur"
    assert EntropySpec("AczelDaroczy").measure == "aczel-daroczy"
    assert EntropySpec("HAVRDA_CHARVAT").measure == "havrda-charvat"
    assert EntropySpec("kapur") == EntropySpec("kapur", 2, 2)
    assert EntropySpec("taneja").beta == 1.0
    assert EntropySpec("aczel-daroczy").beta == 0.5
    assert EntropySpec("havrda-charvat", 3, 9).beta is None
    assert EntropySpec("shannon", 5, 5).alpha is None
    with pytest.raises(EntropyDomainError):
        EntropySpec("renyi")


def test_probability_vector_checks():
    for bad in ([], [0.0, 1.0], [0.7, 0.7], [1.5], [float("nan")]):
        with pytest.raises(EntropyDomainError):
            probability_vector(bad)
    assert probability_vector([0.3, 0.2]).tolist() == [0.3, 0.2]


# --- worked values -------------------------------------------------------------
# Exact-form cases at 1e-12, hand evaluations at 1e-9, parameter limits at 1e-4.

EXAMPLES = [
    # (function, args, expected, tol)
    (shannon, ([0.5, 0.5],), 1.0, 1e-12),
    (shannon, ([1.0],), 0.0, 1e-12),
    (shannon, ([0.25] * 4,), 2.0, 1e-12),
    (kapur, ([1.0], 2, 3), 0.0, 1e-12),
    (kapur, ([0.25] * 4, 2, 1), 2.0, 1e-9),
    (kapur, ([0.5, 0.5], 1 + 1e-7, 1), 1.0, 1e-4),
    (aczel_daroczy, ([1.0], 1, 0.5), 0.0, 1e-12),
    (aczel_daroczy, ([0.5, 0.5], 1, 0.5), LN_HALF, 1e-9),
    (aczel_daroczy, ([0.5, 0.5], 2, 1), math.atan(-0.3194806381568174 / 0.38461945068198605), 1e-9),
    (havrda_charvat, ([1.0], 2), 0.0, 1e-12),
    (havrda_charvat, ([0.5, 0.5], 2), 1.0, 1e-12),
    (havrda_charvat, ([0.5, 0.5], 1 + 1e-7), 1.0, 1e-4),
    (taneja, ([1.0], 1, 1), 0.0, 1e-12),
    (taneja, ([0.5, 0.5], 1, 1), math.sin(math.log(2)) / math.sin(1), 1e-9),
    (taneja, ([0.5, 0.5], 1, 1e-6), math.log(2), 1e-4),
    (sharma_mittal, ([1.0], 2, 2), 0.0, 1e-12),
    (sharma_mittal, ([0.5, 0.5], 2, 2), 1.0, 1e-12),
    (sharma_mittal, ([0.25] * 4, 0.5, 2), 1 / (math.sqrt(2) - 1), 1e-9),
]


@pytest.mark.parametrize("fn, args, expected, tol", EXAMPLES,
                         ids=[f"{e[0].__name__}-{i}" for i, e in enumerate(EXAMPLES)])
def test_worked_values(fn, args, expected, tol):
    assert abs(fn(*args) - expected) <= tol


def test_frozen_numeric_values():
    # values computed once by hand and pinned
    assert abs(taneja([0.5, 0.5], 1, 1) - 0.7593384535528653) <= 1e-12
    assert abs(aczel_daroczy([0.5, 0.5], 2, 1) - (-0.6931471805599453)) <= 1e-12
    assert abs(sharma_mittal([0.25] * 4, 0.5, 2) - 2.414213562373095) <= 1e-12


def test_havrda_charvat_limit_from_below():
    assert abs(havrda_charvat([0.5, 0.5], 1 - 1e-7) - 1.0) <= 1e-4


def test_aczel_daroczy_singularity():
    # p^a cos(b ln p) sums to zero when b ln p = -pi/2 for a single-term vector
    p = math.exp(-math.pi / 2)
    with pytest.raises(SingularityError):
        aczel_daroczy([p], 1, 1)


# --- properties ----------------------------------------------------------------

prob_vectors = st.lists(st.floats(0.01, 1.0), min_size=1, max_size=8).map(
    lambda xs: [x / sum(xs) for x in xs])


@settings(max_examples=200, deadline=None)
@given(p=prob_vectors, alpha=st.sampled_from([0.5, 2.0, 3.0]))
def test_sharma_mittal_reduces_to_havrda_charvat(p, alpha):
    p = [x for x in p if x > 0]
    assert abs(sharma_mittal(p, alpha, alpha) - havrda_charvat(p, alpha)) <= 1e-9


@settings(max_examples=100, deadline=None)
@given(p=prob_vectors)
def test_limits_to_shannon(p):
    h = shannon(p)
    assert abs(kapur(p, 1 + 1e-7, 1) - h) <= 1e-4
    assert abs(havrda_charvat(p, 1 + 1e-7) - h) <= 1e-4
    assert abs(taneja(p, 1, 1e-7) - math.log(2) * h) <= 1e-4


VALID_SPECS = [
    EntropySpec("shannon"), EntropySpec("kapur", 2, 2), EntropySpec("kapur", 0.5, 1),
    EntropySpec("aczel-daroczy", 1, 0.5), EntropySpec("aczel-daroczy", 2, -1),
    EntropySpec("havrda-charvat", 3), EntropySpec("havrda-charvat", 0.5),
    EntropySpec("taneja", 2, 1), EntropySpec("taneja", 0.7, 4),
    EntropySpec("sharma-mittal", 2, 3), EntropySpec("sharma-mittal", 0.5, 0.25),
]


@pytest.mark.parametrize("spec", VALID_SPECS, ids=lambda s: s.label)
def test_degenerate_vector_is_zero(spec):
    assert entropy([1.0], spec) == 0.0


@settings(max_examples=100, deadline=None)
@given(p=prob_vectors, seed=st.integers(0, 1000))
def test_permutation_invariance_and_uniform_maximum(p, seed):
    rng = np.random.default_rng(seed)
    q = list(rng.permutation(p))
    uniform = [1 / len(p)] * len(p)
    for spec in (EntropySpec("shannon"), EntropySpec("havrda-charvat", 2),
                 EntropySpec("havrda-charvat", 0.5), EntropySpec("kapur", 2, 1),
                 EntropySpec("kapur", 0.5, 1)):
        assert abs(entropy(p, spec) - entropy(q, spec)) <= 1e-9
        assert entropy(p, spec) <= entropy(uniform, spec) + 1e-9


# --- per-pixel scores ------------------------------------------------------------

def test_shannon_scores_examples():
    s = pixel_scores(PixelGrid(2, 2, 1, [10, 10, 20, 30]), EntropySpec("shannon"))
    assert s.tolist() == [0.5, 0.5, 0.5, 0.5]
    s = pixel_scores(PixelGrid(2, 2, 1, [10, 10, 10, 20]), EntropySpec("shannon"))
    assert abs(s[0] - 0.31127812445913283) <= 1e-12
    assert s[0] == s[1] == s[2]
    assert s[3] == 0.5


@pytest.mark.parametrize("spec", VALID_SPECS, ids=lambda s: s.label)
def test_constant_grid_scores_equal(spec):
    s = pixel_scores(PixelGrid(3, 2, 3, [5, 6, 7] * 6), spec)
    assert len(s) == 6 and np.all(s == s[0])


def test_sum_form_scores_are_summands():
    p = np.array([0.5, 0.3, 0.15, 0.05])
    a, b = 2.0, 1.0
    hc = tuple_scores(p, EntropySpec("havrda-charvat", a))
    assert np.allclose(hc, p ** a / (2 ** (1 - a) - 1), rtol=1e-12, atol=0)
    tj = tuple_scores(p, EntropySpec("taneja", a, b))
    assert np.allclose(tj, -(2 ** (a - 1) / math.sin(b)) * p ** a * np.sin(b * np.log(p)), rtol=1e-12, atol=0)


def test_leave_one_out_dominant_term():
    # one dominant term: the remainder is tiny and must not be lost to cancellation
    p = [0.999] + [1e-4] * 10
    spec = EntropySpec("kapur", 2, 2)
    got = tuple_scores(np.array(p), spec)
    full = entropy(p, spec)
    want = full - entropy(p[1:], spec)
    assert abs(got[0] - want) <= 1e-9 * max(1, abs(want))


def test_scores_reject_bad_spec():
    with pytest.raises(EntropyDomainError):
        pixel_scores(PixelGrid(1, 1, 1, [0]), EntropySpec("kapur", 1, 1))


def test_all_measures_listed():
    assert len(MEASURES) == 6
