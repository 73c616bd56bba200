#!/usr/bin/env python3
"""Regenerates the binary PGM test images under data/.

coins     : scikit-image coins, center-cropped to 246x300
cameraman : scikit-image camera, 2x2 box-downsampled to 256x256
rice      : seeded synthetic stand-in (elliptic grains on a shaded background)
"""
import pathlib

import numpy as np
from skimage import data

OUT = pathlib.Path(__file__).resolve().parent.parent / "data"


def write_pgm(path, img):
    img = np.clip(np.rint(img), 0, 255).astype(np.uint8)
    h, w = img.shape
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (w, h))
        f.write(img.tobytes())


def coins():
    c = data.coins()
    h, w = c.shape
    r0, c0 = (h - 246) // 2, (w - 300) // 2
    return c[r0:r0 + 246, c0:c0 + 300].astype(float)


def cameraman():
    c = data.camera().astype(float)
    return c.reshape(256, 2, 256, 2).mean(axis=(1, 3))


def rice(seed=7):
    rng = np.random.default_rng(seed)
    m = n = 256
    yy, xx = np.mgrid[0:m, 0:n].astype(float)
    img = 110.0 - 70.0 * (yy / m) + 15.0 * np.sin(xx / 60.0)
    for _ in range(90):
        cy, cx = rng.uniform(8, m - 8), rng.uniform(8, n - 8)
        a, b = rng.uniform(9, 13), rng.uniform(3, 4.5)
        th = rng.uniform(0, np.pi)
        dy, dx = yy - cy, xx - cx
        u = dx * np.cos(th) + dy * np.sin(th)
        v = -dx * np.sin(th) + dy * np.cos(th)
        r = (u / a) ** 2 + (v / b) ** 2
        grain = np.clip(1.0 - r, 0.0, None) ** 0.35
        img = np.maximum(img, np.where(r < 1.0, 150.0 + 70.0 * grain, 0.0))
    return img


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    write_pgm(OUT / "coins.pgm", coins())
    write_pgm(OUT / "cameraman.pgm", cameraman())
    write_pgm(OUT / "rice.pgm", rice())
