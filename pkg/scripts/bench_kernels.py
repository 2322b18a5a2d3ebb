"""Summarise naive vs separable erosion timings (median over reps).

    python scripts/bench_kernels.py [--sizes 256,1024] [--mus 1,5,20,50] [--reps 3]
"""
import argparse
import statistics
import time

import numpy as np

from morphenhance import morphology as m


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="256,1024")
    ap.add_argument("--mus", default="1,5,20,50")
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'size':>6} {'mu':>4} {'naive ms':>10} {'separable ms':>13} {'speedup':>8}")
    for size in map(int, args.sizes.split(",")):
        f = rng.integers(0, 256, (size, size), dtype=np.uint8)
        for mu in map(int, args.mus.split(",")):
            times = {}
            for impl in m.IMPLS:
                runs = []
                for _ in range(args.reps):
                    t0 = time.perf_counter()
                    m.erode(f, mu, impl)
                    runs.append((time.perf_counter() - t0) * 1000)
                times[impl] = statistics.median(runs)
            ratio = times["naive"] / max(times["separable"], 1e-9)
            print(f"{size:6d} {mu:4d} {times['naive']:10.2f} {times['separable']:13.2f} {ratio:8.1f}x")


if __name__ == "__main__":
    main()
