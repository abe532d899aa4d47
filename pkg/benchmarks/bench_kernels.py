"""Time the numba kernels against their pure-numpy fallbacks.

Run: python benchmarks/bench_kernels.py --repeats 5

Both paths are imported side by side from ``tomox._kernels``; the numba path
needs numba installed and TOMOX_DISABLE_NUMBA unset. The first call of each
numba kernel (compilation) is excluded from the timings.
"""
import argparse
import time

import numpy as np

from tomox import _kernels as K


def best_of(fn, args, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best * 1000.0, out


def cases(rng, n, m):
    t = -8.0 + 16.0 * np.arange(n) / (n - 1)
    g = rng.normal(size=n) + 1j * rng.normal(size=n)
    x = rng.uniform(-8.0, 8.0, size=m)
    omega = np.linspace(-40.0, 40.0, m)
    return [
        ("sinc_interp", K.sinc_interp_numpy, K.sinc_interp_numba, (g, t[0], t[1] - t[0], x)),
        ("dft_at", K.dft_at_numpy, K.dft_at_numba, (g, t, omega)),
        ("hermite_overlaps", K.hermite_overlaps_numpy, K.hermite_overlaps_numba, (t, g, 200)),
    ]


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=257, help="signal samples")
    p.add_argument("--m", type=int, default=20000, help="evaluation points")
    p.add_argument("--repeats", type=int, default=5)
    args = p.parse_args()

    if not K.USE_NUMBA:
        print("numba unavailable or disabled; only the numpy path would run")
        return
    rng = np.random.default_rng(0)
    print(f"{'kernel':18s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s} {'max |diff|':>11s}")
    for name, f_np, f_nb, a in cases(rng, args.n, args.m):
        f_nb(*a)  # compile
        t_np, r_np = best_of(f_np, a, args.repeats)
        t_nb, r_nb = best_of(f_nb, a, args.repeats)
        diff = float(np.max(np.abs(r_np - r_nb)))
        print(f"{name:18s} {t_np:10.2f} {t_nb:10.2f} {t_np / t_nb:7.2f}x {diff:11.2e}")


if __name__ == "__main__":
    main()
