"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_backends.py
"""

import math
import time

from bosonic_mac import _core_py

try:
    from bosonic_mac import _core
except ImportError:
    _core = None


def surface_scan(impl, grid_n=33):
    """The hot loop of the surface and scan commands: one rate triple per
    squeeze-fraction cell, four sign layers."""
    eta1, eta2, nt, na, nb = 0.2, 0.9, 4.0, 4.0, 8.0
    total = 0.0
    for sign_a, sign_b in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        for i in range(grid_n):
            p_a = i / (grid_n - 1)
            r_a = sign_a * math.asinh(math.sqrt(p_a * na))
            for j in range(grid_n):
                p_b = j / (grid_n - 1)
                r_b = sign_b * math.asinh(math.sqrt(p_b * nb))
                ra, _, rb, _, rab, _ = impl.rate_triple(eta1, eta2, nt, na, nb, r_a, r_b)
                total += ra + rb + rab
    return total


def entropy_sweep(impl, n=200_000):
    total = 0.0
    for i in range(1, n):
        total += impl.g_entropy(i * 1e-3)
    return total


def timed(fn, *args, repeats=3):
    best = float("inf")
    value = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, value


def main():
    backends = [("python", _core_py)]
    if _core is not None:
        backends.append(("cython", _core))
    else:
        print("compiled extension not available; timing the fallback only")

    results = {}
    for bench_name, bench in (("surface-scan 33x33x4", surface_scan),
                              ("g-entropy sweep 2e5", entropy_sweep)):
        row = {}
        checks = []
        for name, impl in backends:
            elapsed, value = timed(bench, impl)
            row[name] = elapsed
            checks.append(value)
        if len(checks) == 2 and not math.isclose(checks[0], checks[1], rel_tol=1e-9):
            raise SystemExit(f"{bench_name}: backends disagree: {checks}")
        results[bench_name] = row

    width = max(len(k) for k in results)
    print(f"{'benchmark':<{width}}  python      cython      speedup")
    for name, row in results.items():
        py = row["python"]
        if "cython" in row:
            cy = row["cython"]
            print(f"{name:<{width}}  {py * 1e3:8.2f}ms  {cy * 1e3:8.2f}ms  {py / cy:6.1f}x")
        else:
            print(f"{name:<{width}}  {py * 1e3:8.2f}ms  {'-':>10}  {'-':>7}")


if __name__ == "__main__":
    main()
