#!/usr/bin/env python3
"""Sweep every coordinate-hyperplane local model in the desk-scale box and
check that the augmented restriction complex is exact in every degree.

    PYTHONPATH=src python3 scripts/local_exactness_sweep.py [--degree-bound K]

The box is ambient dimension <= 4, any nonempty component subset, and
multiplicities in {1, 2, 3}; 336 models in all.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from dualcech import localmodel


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--degree-bound", type=int, default=8)
    parser.add_argument("--max-ambient", type=int, default=4)
    args = parser.parse_args()

    start = time.perf_counter()
    total = 0
    failures = []
    slowest = (0.0, None)
    for spec in localmodel.sweep_specs(
        max_ambient=args.max_ambient, degree_bound=args.degree_bound
    ):
        tick = time.perf_counter()
        verdict = localmodel.verify_exactness(spec)
        took = time.perf_counter() - tick
        if took > slowest[0]:
            slowest = (took, spec)
        total += 1
        if not verdict.exact:
            failures.append((spec, verdict.failures()))
    elapsed = time.perf_counter() - start

    print(f"models checked : {total}")
    print(f"degree bound   : {args.degree_bound}")
    print(f"elapsed        : {elapsed:.2f}s")
    spec = slowest[1]
    print(
        f"slowest model  : ambient {spec.ambient}, components {spec.components}, "
        f"multiplicities {spec.multiplicities} ({slowest[0]*1000:.0f} ms)"
    )
    if failures:
        print(f"NOT EXACT: {len(failures)} models")
        for spec, where in failures:
            print(f"  {spec}: failing (degree, joint) pairs {where}")
        return 2
    print("verdict        : exact everywhere")
    return 0


if __name__ == "__main__":
    sys.exit(main())
