"""Time the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import importlib
import timeit

import numpy as np

from planekin import _kernels_py


def cases(rng):
    n = 20_000
    za = rng.normal(size=n) + 1j * rng.normal(size=n)
    zb = za + 1.5 * np.exp(1j * rng.uniform(0, 2 * np.pi, n))
    t = np.linspace(0, 2 * np.pi, 2048, endpoint=False)
    # five-bar-like curve with a handful of crossings
    x = np.cos(t) + 0.6 * np.cos(3 * t)
    y = np.sin(t) - 0.6 * np.sin(3 * t)
    return {
        "dyad_units (20k poses)": lambda impl: impl.dyad_units(za, zb, 1.2, 1.0, 1),
        "polyline_crossings (2048 pts)": lambda impl: impl.polyline_crossings(x, y, True),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    try:
        compiled = importlib.import_module("planekin._kernels")
    except ImportError:
        compiled = None
        print("compiled extension not built; timing the Python fallback only")
    print(f"{'kernel':32s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for name, call in cases(np.random.default_rng(1)).items():
        py = min(timeit.repeat(lambda: call(_kernels_py), number=1, repeat=args.repeat)) * 1e3
        if compiled is None:
            print(f"{name:32s} {py:12.2f} {'-':>12s} {'-':>8s}")
            continue
        cy = min(timeit.repeat(lambda: call(compiled), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:32s} {py:12.2f} {cy:12.2f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
