from pathlib import Path

import numpy as np
import pytest

from entroseed import _backend
from entroseed.ingest import PixelGrid

DATA = Path(__file__).resolve().parents[1] / "src" / "entroseed" / "data"
CARS_MANIFEST = DATA / "cars_mini" / "manifest.txt"
XRAY_MANIFEST = DATA / "xray_mini" / "manifest.txt"
CAR_IMAGE = DATA / "cars_mini" / "car_01.png"

ACCEPTANCE_LINES = []


@pytest.fixture(params=sorted(_backend.AVAILABLE))
def backend(request):
    return request.param


def random_grid(rng, max_side=16, channels=None, levels=256):
    """Random grid; a small ``levels`` forces repeated tuples and score ties."""
    w = int(rng.integers(1, max_side + 1))
    h = int(rng.integers(1, max_side + 1))
    c = int(channels or rng.choice([1, 3]))
    palette = rng.choice(256, size=levels, replace=False) if levels < 256 else np.arange(256)
    data = palette[rng.integers(0, len(palette), size=w * h * c)]
    return PixelGrid(w, h, c, data)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
