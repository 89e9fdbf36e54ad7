#!/usr/bin/env python3
"""Regenerate data/corpus: six 120x120 RGB crops used by the experiment harness.

Five are crops of scikit-image's bundled sample photographs (public domain /
CC0: astronaut and rocket by NASA, cat by Stefan van der Walt, coffee from
Pexels, cameraman from the scikit-image collection); the sixth is seeded
1/f^1.2 spectral noise. Requires scikit-image; the checked-in PPM files are
canonical, this script only documents how they were made.
"""
import pathlib

import numpy as np
from skimage import data

SIZE = 120


def crop(img, r0, c0):
    out = img[r0:r0 + SIZE, c0:c0 + SIZE].astype(np.float64) / 255.0
    if out.ndim == 2:
        out = np.stack([out] * 3, axis=-1)
    return out


def spectral_texture(seed=12345, exponent=1.2):
    rng = np.random.default_rng(seed)
    f = np.fft.fftfreq(SIZE)
    radius = np.sqrt(f[:, None] ** 2 + f[None, :] ** 2)
    radius[0, 0] = 1.0
    out = np.empty((SIZE, SIZE, 3))
    for ch in range(3):
        spec = rng.standard_normal((SIZE, SIZE)) + 1j * rng.standard_normal((SIZE, SIZE))
        t = np.real(np.fft.ifft2(spec / radius ** exponent))
        t = (t - t.min()) / (t.max() - t.min())
        out[..., ch] = 0.35 + 0.3 * t
    return out


def write_ppm(path, img):
    u8 = np.round(np.clip(img, 0.0, 1.0) * 255.0).astype(np.uint8)
    h, w = u8.shape[:2]
    with open(path, "wb") as f:
        f.write(f"P6\n{w} {h}\n255\n".encode())
        f.write(u8.tobytes())


def main():
    corpus = {
        "astronaut_suit": crop(data.astronaut(), 300, 300),
        "cat_eye": crop(data.chelsea(), 80, 130),
        "coffee_cup": crop(data.coffee(), 140, 240),
        "cameraman": crop(data.camera(), 100, 150),
        "rocket": crop(data.rocket(), 150, 300),
        "texture": spectral_texture(),
    }
    out_dir = pathlib.Path(__file__).resolve().parent.parent / "data" / "corpus"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, img in corpus.items():
        write_ppm(out_dir / f"{name}.ppm", img)
        print(f"wrote {name}.ppm")


if __name__ == "__main__":
    main()
