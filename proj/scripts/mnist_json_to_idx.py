"""Converts the npm "mnist" digit JSON files into standard IDX files.

The JSON stores pixels as intensity/255 rounded to three decimals, which
round-trips exactly to the original bytes. Samples are interleaved with a
fixed seed; the first 9000 go to train-*, the last 1000 to t10k-*.
"""
import json
import random
import struct
import sys
from pathlib import Path

PIXELS = 28 * 28
TEST_COUNT = 1000


def write_idx(path, magic, dims, payload):
    with open(path, "wb") as f:
        f.write(struct.pack(">I", magic))
        for d in dims:
            f.write(struct.pack(">I", d))
        f.write(payload)


def main(src, dest):
    samples = []
    for digit in range(10):
        data = json.loads((Path(src) / f"{digit}.json").read_text())["data"]
        for i in range(len(data) // PIXELS):
            pix = bytes(round(v * 255) for v in data[i * PIXELS:(i + 1) * PIXELS])
            samples.append((pix, digit))
    random.Random(20180601).shuffle(samples)
    splits = {"train": samples[:-TEST_COUNT], "t10k": samples[-TEST_COUNT:]}
    out = Path(dest)
    for name, rows in splits.items():
        write_idx(out / f"{name}-images-idx3-ubyte", 2051, (len(rows), 28, 28),
                  b"".join(p for p, _ in rows))
        write_idx(out / f"{name}-labels-idx1-ubyte", 2049, (len(rows),),
                  bytes(l for _, l in rows))
        print(f"{name}: {len(rows)} samples")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
