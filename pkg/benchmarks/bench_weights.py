#!/usr/bin/env python3
"""Benchmark the weight kernel backends (compiled extension vs NumPy).

The block kernel dominates every distribution, moment and fidelity
evaluation, so this is the number that decides whether building the
extension is worth it on a given machine.

Usage: python benchmarks/bench_weights.py [--repeats N]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np
from scipy.special import gammaln

from levelscope._backend import available_backends

# (b, kappa*t, levels) workloads spanning the regimes the library visits:
# early-time narrow distributions up to late-time ones with ~1e4 levels.
WORKLOADS = [
    (1, 0.01, 64),
    (5, 1.0, 512),
    (15, 1.0, 1024),
    (15, 100.0, 9500),
]


def run_block(impl, b: int, kt: float, levels: int, out: np.ndarray, lf: np.ndarray) -> None:
    g = 2.0 * kt / (1.0 + 2.0 * kt)
    z = 1.0 / (1.0 + 2.0 * kt)
    impl.fock_weight_block(b, math.log(g), math.log(z), lf, 0, levels, out)


def best_of(repeats: int, fn) -> float:
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=7, help="best-of-N timing")
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends available: {', '.join(backends)}")
    print(f"{'workload':<28} " + " ".join(f"{name:>14}" for name in backends) + "   speedup")
    reference = "python"
    for b, kt, levels in WORKLOADS:
        lf = gammaln(np.arange(1.0, levels + 2.0))
        out = np.empty(levels)
        times: dict[str, float] = {}
        results: dict[str, np.ndarray] = {}
        for name, impl in backends.items():
            times[name] = best_of(args.repeats, lambda i=impl: run_block(i, b, kt, levels, out, lf))
            results[name] = out.copy()
        for name, arr in results.items():
            np.testing.assert_allclose(arr, results[reference], rtol=1e-12, atol=1e-300)
        label = f"b={b:<3d} kt={kt:<7g} n={levels}"
        cells = " ".join(f"{times[name] * 1e3:>11.3f} ms" for name in backends)
        if "compiled" in times:
            speedup = f"{times[reference] / times['compiled']:10.1f}x"
        else:
            speedup = "       n/a"
        print(f"{label:<28} {cells} {speedup}")


if __name__ == "__main__":
    main()
