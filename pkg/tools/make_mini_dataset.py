"""Regenerate the bundled mini datasets under src/entroseed/data/.

Synthetic scenes only, so everything shipped is redistributable. Output is
deterministic for a given numpy version.

    python tools/make_mini_dataset.py
"""
from pathlib import Path

import numpy as np
from PIL import Image

OUT = Path(__file__).resolve().parents[1] / "src" / "entroseed" / "data"
W, H = 96, 64

CAR_COLORS = [(200, 30, 35), (30, 60, 170), (225, 190, 40), (40, 140, 70), (150, 40, 150), (210, 90, 30)]


NOISE = 28


def soften(img, passes=2):
    # separable 3-tap box blur, edges replicated
    for _ in range(passes):
        for axis in (0, 1):
            pad = [(1, 1) if a == axis else (0, 0) for a in range(img.ndim)]
            p = np.pad(img, pad, mode="edge")
            n = img.shape[axis]
            img = (np.take(p, range(0, n), axis) + np.take(p, range(1, n + 1), axis)
                   + np.take(p, range(2, n + 2), axis)) / 3
    return img


def car_scene(rng, body):
    y, x = np.mgrid[0:H, 0:W]
    img = np.zeros((H, W, 3))
    # sky: pale blue fading to near white at the horizon
    t = y / (0.55 * H)
    sky = np.stack([150 + 70 * t, 185 + 45 * t, 240 + 8 * t], axis=-1)
    img[:] = sky
    # road, darkening towards the viewer
    road = y >= int(0.55 * H)
    r = (y - 0.55 * H) / (0.45 * H)
    for c, base in enumerate((105, 105, 112)):
        img[..., c] = np.where(road, base - 60 * r, img[..., c])
    # car body and cabin
    x0 = rng.integers(4, 16)
    body_mask = (x >= x0) & (x < x0 + 76) & (y >= 27) & (y < 48)
    cabin = (x >= x0 + 16) & (x < x0 + 58) & (y >= 14) & (y < 28)
    shade = 1.1 - 0.35 * (y - 14) / 34
    for c in range(3):
        img[..., c] = np.where(body_mask | cabin, body[c] * shade, img[..., c])
    window = (x >= x0 + 20) & (x < x0 + 54) & (y >= 17) & (y < 26)
    img[window] = (120, 150, 170)
    # wheels
    for cx in (x0 + 16, x0 + 60):
        wheel = (x - cx) ** 2 + (y - 48) ** 2 <= 64
        img[wheel] = (15, 15, 18)
    img = soften(img)
    img += rng.normal(0, NOISE, img.shape)
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def xray_scene(rng):
    y, x = np.mgrid[0:H, 0:W]
    img = np.full((H, W), 20.0)
    cx, cy = W / 2 + rng.normal(0, 3), H / 2 + rng.normal(0, 2)
    chest = ((x - cx) / 40) ** 2 + ((y - cy) / 30) ** 2 <= 1
    img[chest] = 150
    for side in (-1, 1):
        lung = ((x - cx - side * 17) / 13) ** 2 + ((y - cy) / 22) ** 2 <= 1
        img[lung] = 60
    spine = (np.abs(x - cx) < 4) & chest
    img[spine] = 225
    img += rng.normal(0, 8, img.shape)
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def main():
    rng = np.random.default_rng(20240601)
    cars = OUT / "cars_mini"
    xray = OUT / "xray_mini"
    cars.mkdir(parents=True, exist_ok=True)
    xray.mkdir(parents=True, exist_ok=True)
    for i, body in enumerate(CAR_COLORS, 1):
        Image.fromarray(car_scene(rng, body)).save(cars / f"car_{i:02d}.png")
    for i in range(1, 7):
        Image.fromarray(xray_scene(rng)).save(xray / f"xray_{i:02d}.png")


if __name__ == "__main__":
    main()
