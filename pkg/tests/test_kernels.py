import numpy as np
import pytest

from entroseed import _backend, _pykernels


def test_python_fallback_always_available():
    assert _backend.AVAILABLE["python"] is _pykernels
    assert _backend.BACKEND in _backend.AVAILABLE


@pytest.mark.skipif("cython" not in _backend.AVAILABLE, reason="compiled kernels not built")
def test_backends_agree_bitwise():
    c, py = _backend.get("cython"), _backend.get("python")
    rng = np.random.default_rng(0)
    for _ in range(200):
        n, d, k = int(rng.integers(1, 300)), int(rng.integers(1, 4)), int(rng.integers(1, 6))
        pts = rng.integers(0, 256, size=(n, d)).astype(float)
        if rng.random() < 0.5:
            pts += rng.normal(0, 1, size=pts.shape)
        cen = pts[rng.integers(0, n, size=k)] + rng.normal(0, 3, size=(k, d))
        la, da = c.assign(pts, cen)
        lb, db = py.assign(pts, cen)
        assert np.array_equal(la, lb) and np.array_equal(da, db)
        th = float(rng.uniform(0, 200))
        pre = sorted(set(rng.integers(0, n, size=int(rng.integers(0, 3))).tolist()))
        assert np.array_equal(c.greedy_scan(pts, th, k, pre), py.greedy_scan(pts, th, k, pre))


def test_assign_ties_to_lowest_index(backend):
    kern = _backend.get(backend)
    labels, d2 = kern.assign(np.array([[5.0]]), np.array([[4.0], [6.0], [5.0], [5.0]]))
    assert labels.tolist() == [2] and d2.tolist() == [0.0]
    labels, _ = kern.assign(np.array([[5.0]]), np.array([[4.0], [6.0]]))
    assert labels.tolist() == [0]


def test_greedy_scan_strict_threshold(backend):
    kern = _backend.get(backend)
    pts = np.array([[0.0], [10.0], [20.0], [31.0]])
    # distance exactly th is rejected
    assert kern.greedy_scan(pts, 10.0, 4, []).tolist() == [0, 2, 3]
    assert kern.greedy_scan(pts, 9.99, 4, []).tolist() == [0, 1, 2, 3]
    assert kern.greedy_scan(pts, 10.0, 4, [1]).tolist() == [1, 3]
    assert kern.greedy_scan(pts, 0.0, 2, []).tolist() == [0, 1]
