#!/usr/bin/env python3
"""Regenerates the bundled test corpora from the sample photographs that ship
with scikit-image and matplotlib.

Output layout (class-per-directory):
    tests/data/corpus/<class>/<class>_NN.png        4 classes x 16 crops, 96x96 RGB
    tests/data/mini_corpus/<class>/<class>_NN.ppm   4 classes x 8 crops, 32x32 RGB
    tests/data/interop/*.jpg + *_ref.png            third-party baseline JPEGs

Crops are taken at fixed seeded offsets so reruns are byte-identical.
"""
import argparse
import os
import random

import matplotlib
import numpy as np
from PIL import Image
import skimage.data


def sources():
    mpl = os.path.join(os.path.dirname(matplotlib.__file__), "mpl-data", "sample_data")
    hopper = np.asarray(Image.open(os.path.join(mpl, "grace_hopper.jpg")).convert("RGB"))
    sk = os.path.dirname(skimage.data.__file__)

    def load(name):
        a = np.asarray(Image.open(os.path.join(sk, name)).convert("RGB"))
        return a

    return {
        "indoor": [load("chelsea.png"), load("coffee.png")],
        "people": [load("astronaut.png"), hopper, load("camera.png")],
        "objects": [load("rocket.jpg"), load("motorcycle_left.png"), load("motorcycle_right.png")],
        "textures": [load("grass.png"), load("gravel.png"), load("brick.png")],
    }


def crops(images, count, size, rng):
    out = []
    for n in range(count):
        img = images[n % len(images)]
        h, w = img.shape[:2]
        y = rng.randrange(0, h - size)
        x = rng.randrange(0, w - size)
        out.append(np.ascontiguousarray(img[y:y + size, x:x + size, :3]).astype(np.uint8))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "tests", "data"))
    args = ap.parse_args()
    rng = random.Random(20180326)
    src = sources()

    for cls, images in src.items():
        d = os.path.join(args.out, "corpus", cls)
        os.makedirs(d, exist_ok=True)
        for i, c in enumerate(crops(images, 16, 96, rng)):
            Image.fromarray(c).save(os.path.join(d, f"{cls}_{i:02d}.png"), optimize=True)

    for cls, images in src.items():
        d = os.path.join(args.out, "mini_corpus", cls)
        os.makedirs(d, exist_ok=True)
        for i, c in enumerate(crops(images, 8, 32, rng)):
            Image.fromarray(c).save(os.path.join(d, f"{cls}_{i:02d}.ppm"))

    d = os.path.join(args.out, "interop")
    os.makedirs(d, exist_ok=True)
    photo = np.asarray(Image.open(os.path.join(os.path.dirname(skimage.data.__file__), 'astronaut.png')).convert('RGB'))[100:180, 150:250]  # 100x80, not a multiple of 8 vertically
    Image.fromarray(photo).save(os.path.join(d, "pil_rgb_444.jpg"), quality=90, subsampling=0)
    Image.open(os.path.join(d, "pil_rgb_444.jpg")).save(os.path.join(d, "pil_rgb_444_ref.png"))
    gray = np.asarray(Image.open(os.path.join(os.path.dirname(skimage.data.__file__), 'camera.png')).convert('L'))[200:261, 200:275]
    Image.fromarray(gray).save(os.path.join(d, "pil_gray.jpg"), quality=75)
    Image.open(os.path.join(d, "pil_gray.jpg")).save(os.path.join(d, "pil_gray_ref.png"))
    Image.fromarray(photo).save(os.path.join(d, "pil_rgb_420.jpg"), quality=90, subsampling=2)
    Image.fromarray(photo).save(os.path.join(d, "pil_progressive.jpg"), quality=90, subsampling=0, progressive=True)


if __name__ == "__main__":
    main()
