#!/usr/bin/env python3
# scripts/fetch_mnist.py

# Copyright 2026  The mdnn Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
# WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
# MERCHANTABLITY OR NON-INFRINGEMENT.
# See the Apache 2 License for the specific language governing permissions and
# limitations under the License.

"""Writes MNIST-format IDX files from the digits bundled in the npm `mnist` package.

The package ships 10,000 MNIST digits as JSON (pixel / 255, three decimals).
They are shuffled with a fixed seed and split into train and t10k files with
the standard IDX names, so `mdnn generate noisy-mnist --mnist-dir` can read
them. When the official IDX files are available, point --mnist-dir at those
instead.
"""

import argparse
import json
import pathlib
import random
import struct
import subprocess
import tarfile
import tempfile

SIDE = 28


def load_digits(package_dir: pathlib.Path):
    samples = []
    for digit in range(10):
        path = package_dir / "src" / "digits" / f"{digit}.json"
        flat = json.loads(path.read_text())["data"]
        if len(flat) % (SIDE * SIDE):
            raise SystemExit(f"{path}: length {len(flat)} is not a multiple of {SIDE * SIDE}")
        for k in range(0, len(flat), SIDE * SIDE):
            pixels = bytes(min(255, max(0, round(v * 255))) for v in flat[k : k + SIDE * SIDE])
            samples.append((pixels, digit))
    return samples


def write_images(path: pathlib.Path, samples):
    with open(path, "wb") as f:
        f.write(struct.pack(">IIII", 0x803, len(samples), SIDE, SIDE))
        for pixels, _ in samples:
            f.write(pixels)


def write_labels(path: pathlib.Path, samples):
    with open(path, "wb") as f:
        f.write(struct.pack(">II", 0x801, len(samples)))
        f.write(bytes(label for _, label in samples))


def fetch_package(workdir: pathlib.Path) -> pathlib.Path:
    subprocess.run(["npm", "pack", "mnist@1.1.0", "--silent"], cwd=workdir, check=True,
                   stdout=subprocess.DEVNULL)
    tgz = next(workdir.glob("mnist-*.tgz"))
    with tarfile.open(tgz) as tar:
        tar.extractall(workdir)
    return workdir / "package"


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="data/mnist", help="output directory")
    parser.add_argument("--package-dir", help="already extracted npm package (skips npm pack)")
    parser.add_argument("--n-test", type=int, default=2000, help="digits placed in the t10k files")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        package = pathlib.Path(args.package_dir) if args.package_dir else fetch_package(pathlib.Path(tmp))
        samples = load_digits(package)

    random.Random(args.seed).shuffle(samples)
    test, train = samples[: args.n_test], samples[args.n_test :]
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_images(out / "train-images-idx3-ubyte", train)
    write_labels(out / "train-labels-idx1-ubyte", train)
    write_images(out / "t10k-images-idx3-ubyte", test)
    write_labels(out / "t10k-labels-idx1-ubyte", test)
    print(f"wrote {len(train)} train and {len(test)} test digits to {out}")


if __name__ == "__main__":
    main()
