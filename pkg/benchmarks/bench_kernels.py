#!/usr/bin/env python3
"""Benchmark the mod-p kernels: numba lane vs pure-numpy lane.

Usage:
    python3 benchmarks/bench_kernels.py [--full]

--full runs the GL_3(F_5) conjugator search (1,488,000 invertible matrices)
on both lanes; the default uses GL_3(F_3).  Run without SIMSPEC_PURE_NUMPY so
both lanes are available.
"""

import argparse
import random
import time

import numpy as np

from simspec import kernels


def _bench(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _rand_mats(rng, count, n, p):
    return [np.array([[rng.randrange(p) for _ in range(n)] for _ in range(n)],
                     dtype=np.int64) for _ in range(count)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--full", action="store_true",
                    help="search GL_3(F_5) instead of GL_3(F_3)")
    args = ap.parse_args()

    lanes = {"numpy": kernels.IMPLS["numpy"]}
    if kernels.IMPLS["numba"] is not None:
        lanes["numba"] = kernels.IMPLS["numba"]
    else:
        print("numba lane unavailable (SIMSPEC_PURE_NUMPY set or numba missing); "
              "benchmarking numpy lane only")

    rng = random.Random(0)
    p = 11
    mats5 = _rand_mats(rng, 5000, 5, p)

    words_flat = np.array([rng.randrange(2) for _ in range(200)], dtype=np.int64)
    offs = np.arange(0, 201, 8, dtype=np.int64)
    coeffs = np.array([rng.randrange(1, p) for _ in range(len(offs) - 1)],
                      dtype=np.int64)
    word_mats = np.stack(_rand_mats(rng, 2, 4, p))

    search_p = 5 if args.full else 3
    A1, A2, B1, B2 = _rand_mats(rng, 4, 3, search_p)

    tasks = {
        "rank 5x5 (x5000)": lambda lane: [lane["rank"](M, p) for M in mats5],
        "charpoly 5x5 (x5000)": lambda lane: [lane["charpoly"](M, p) for M in mats5],
        "inverse 5x5 (x5000)": lambda lane: [lane["inverse"](M, p) for M in mats5],
        "eval 25 words (x2000)": lambda lane: [
            lane["eval_words"](words_flat, offs, coeffs, word_mats, p)
            for _ in range(2000)],
        "GL3(F%d) search" % search_p: lambda lane: lane["conjugator_search"](
            A1, A2, B1, B2, search_p),
    }

    # warm up (numba compilation happens here, outside the timings)
    for lane in lanes.values():
        lane["rank"](mats5[0], p)
        lane["charpoly"](mats5[0], p)
        lane["inverse"](mats5[0], p)
        lane["eval_words"](words_flat, offs, coeffs, word_mats, p)
        lane["conjugator_search"](A1, A2, B1, B2, search_p)

    width = max(len(k) for k in tasks)
    header = "%-*s" % (width, "task") + "".join("%12s" % k for k in lanes)
    if len(lanes) == 2:
        header += "%12s" % "speedup"
    print(header)
    print("-" * len(header))
    for name, task in tasks.items():
        times = {}
        for lane_name, lane in lanes.items():
            times[lane_name], _ = _bench(lambda lane=lane: task(lane),
                                         repeat=1 if "search" in name else 3)
        row = "%-*s" % (width, name)
        for lane_name in lanes:
            row += "%11.3fs" % times[lane_name]
        if len(lanes) == 2:
            row += "%11.1fx" % (times["numpy"] / times["numba"])
        print(row)


if __name__ == "__main__":
    main()
