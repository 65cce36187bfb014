"""Compare the compiled kernels against the pure-Python fallback.

Three measurements:
  1. scalar objective evaluation throughput,
  2. exhaustive grid scans (the oracle's hot loop),
  3. an end-to-end benchmark suite run per backend (subprocesses, since the
     backend is chosen at import time via RMGA_PURE_PYTHON).

Usage: python benchmarks/bench_backends.py [--replicates N] [--points N]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from rmga._kernels import _pykernels

try:
    from rmga._kernels import _ckernels
except ImportError:
    _ckernels = None

DIMS = {"f1": 3, "f2": 2, "f3": 5, "f4": 30, "f5": 2, "beale": 2, "quad": 2}
SCALAR_FNS = {
    "f1": "eval_f1",
    "f2": "eval_f2",
    "f3": "eval_f3",
    "f4": "eval_f4_noise_free",
    "f5": "eval_f5",
    "beale": "eval_beale",
    "quad": "eval_quad",
}
GRID_CASES = {
    # ~260k points each: big enough to time, small enough for the fallback
    "f5": [[-65.536 + 0.256 * k for k in range(513)]] * 2,
    "f1": [[-5.12 + 0.16 * k for k in range(65)]] * 3,
}


def time_scalar(module, name, points):
    fn = getattr(module, SCALAR_FNS[name])
    start = time.perf_counter()
    for p in points:
        fn(p)
    return time.perf_counter() - start


def time_grid(module, name):
    code = module.GRID_CODES[name]
    start = time.perf_counter()
    module.grid_scan(code, GRID_CASES[name])
    return time.perf_counter() - start


def time_suite(pure: bool, replicates: int) -> float:
    env = dict(os.environ)
    env.pop("RMGA_PURE_PYTHON", None)
    if pure:
        env["RMGA_PURE_PYTHON"] = "1"
    start = time.perf_counter()
    subprocess.run(
        [sys.executable, "-m", "rmga.cli", "suite",
         "--replicates", str(replicates), "--output", "csv",
         "--out-file", os.devnull],
        env=env,
        check=True,
    )
    return time.perf_counter() - start


def row(label, py_s, c_s):
    speedup = f"{py_s / c_s:6.1f}x" if c_s else "     -"
    print(f"{label:<22} {py_s * 1e3:>10.1f} ms {c_s * 1e3 if c_s else float('nan'):>10.1f} ms {speedup}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=200_000,
                        help="scalar evaluations per function")
    parser.add_argument("--replicates", type=int, default=5,
                        help="replicates for the end-to-end suite timing")
    args = parser.parse_args()

    if _ckernels is None:
        print("compiled backend not built; timing the pure backend only")

    print(f"{'benchmark':<22} {'pure':>13} {'compiled':>13} speedup")
    rng = np.random.default_rng(0)
    for name, dim in DIMS.items():
        pts = [tuple(float(c) for c in rng.uniform(-2.0, 2.0, size=dim))
               for _ in range(args.points)]
        py_s = time_scalar(_pykernels, name, pts)
        c_s = time_scalar(_ckernels, name, pts) if _ckernels else None
        row(f"scalar {name} x{args.points // 1000}k", py_s, c_s)

    for name in GRID_CASES:
        n_points = 1
        for axis in GRID_CASES[name]:
            n_points *= len(axis)
        py_s = time_grid(_pykernels, name)
        c_s = time_grid(_ckernels, name) if _ckernels else None
        row(f"grid {name} ({n_points // 1000}k pts)", py_s, c_s)

    pure_s = time_suite(pure=True, replicates=args.replicates)
    comp_s = time_suite(pure=False, replicates=args.replicates) if _ckernels else None
    row(f"suite x{args.replicates}", pure_s, comp_s)
    return 0


if __name__ == "__main__":
    sys.exit(main())
