#!/usr/bin/env python3
"""Regenerate the 512x512 gray covers and the 270x270 payload in tests/data."""
import pathlib

import numpy as np
from skimage import color, data, transform

out = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"
out.mkdir(parents=True, exist_ok=True)


def save_pgm(path, img):
    img = np.ascontiguousarray(img, dtype=np.uint8)
    h, w = img.shape
    path.write_bytes(f"P5\n{w} {h}\n255\n".encode() + img.tobytes())


def to_u8(x):
    return np.clip(np.rint(x * 255.0), 0, 255).astype(np.uint8)


save_pgm(out / "camera.pgm", data.camera())
save_pgm(out / "moon.pgm", data.moon())
save_pgm(out / "astronaut.pgm", to_u8(color.rgb2gray(data.astronaut())))
save_pgm(out / "brick.pgm", data.brick())

coffee = color.rgb2gray(data.coffee())
save_pgm(out / "coffee-270x270.pgm",
         to_u8(transform.resize(coffee[:, 100:500], (270, 270), anti_aliasing=True)))
