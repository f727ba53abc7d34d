"""Benchmark the packed-relation scans: numba kernels versus numpy fallback.

Both backends are loaded in-process (the numba one via the same factory the
package uses at import time), run on identical mask arrays, cross-checked
for equal results, and timed.  Usage:

    python benchmarks/bench_kernels.py [--points 6] [--repeats 5]

Numba timings exclude JIT compilation (one warmup call per scan).
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cstarkit import _kernels, relations


def build_masks(points: int) -> np.ndarray:
    names = [chr(ord("a") + i) for i in range(points)]
    parent = relations.EquivRelation.from_classes([tuple(names)])
    index = parent.index()
    subs = relations.all_subrelations(parent)
    return np.array(
        [relations.encode_mask(s, index) for s in subs], dtype=np.uint64
    )


def time_call(fn, args, repeats):
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        samples.append(time.perf_counter() - t0)
    arr = np.array(samples)
    return arr.mean(), arr.std()


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=6,
                    help="parent size; the sub-relation count grows as the "
                         "Bell number of points+1 (default 6 gives 877)")
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    if not 1 <= args.points <= 8:
        ap.error("--points must be between 1 and 8")

    masks = build_masks(args.points)
    n = args.points
    print(f"parent: full relation on {n} points, {len(masks)} sub-relations")

    try:
        nb = _kernels._make_numba_backend()
    except ImportError:
        nb = None
        print("numba not importable; benchmarking the numpy backend only")
    py = _kernels._PY_BACKEND

    # the triple scan is cubic in the mask count; keep its input moderate
    dist_masks = masks if len(masks) <= 250 else build_masks(5)
    scans = [
        ("closure_many", (masks, n)),
        ("relprod_many", (masks, masks, n)),
        ("scan_idempotent", (masks, n)),
        ("scan_join_vs_commute", (masks, n)),
        ("scan_all_commute", (masks, n)),
        ("scan_absorption", (masks, n)),
        ("scan_distributive", (dist_masks, n)),
    ]

    header = f"{'scan':<22} {'numpy (ms)':>18} {'numba (ms)':>18} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, call_args in scans:
        py_res = py[name](*call_args)
        row = f"{name:<22}"
        py_mean, py_std = time_call(py[name], call_args, args.repeats)
        row += f" {py_mean * 1e3:12.2f} ± {py_std * 1e3:.2f}"
        if nb is not None:
            nb_res = nb[name](*call_args)  # warmup + result check
            same = (
                np.array_equal(py_res, nb_res)
                if isinstance(py_res, np.ndarray)
                else py_res == nb_res
            )
            if not same:
                print(f"BACKEND MISMATCH in {name}: {py_res!r} vs {nb_res!r}")
                return 1
            nb_mean, nb_std = time_call(nb[name], call_args, args.repeats)
            row += f" {nb_mean * 1e3:12.3f} ± {nb_std * 1e3:.3f}"
            row += f" {py_mean / nb_mean:7.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
