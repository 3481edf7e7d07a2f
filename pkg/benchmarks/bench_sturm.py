"""Time the compiled and NumPy Sturm-bisection kernels on oracle-sized matrices.

    python benchmarks/bench_sturm.py [--repeat 5] [--k 5]
"""
import argparse
import time

import numpy as np

from diatomic_levels.oracle import kernels


def kratzer_like(n):
    # same stencil shape the radial oracle builds
    x = np.linspace(1e-3, 70.0, n + 2)[1:-1]
    h = x[1] - x[0]
    c = 2.1e-3
    d = 2 * c / h**2 + c * 30.0 / x**2 - 8.0 / x
    e = np.full(n - 1, -c / h**2)
    return d, e


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--sizes", type=int, nargs="+", default=[1024, 2048, 4096, 8192])
    args = ap.parse_args()

    names = sorted(kernels.BACKENDS)
    print(f"{'N':>6} " + " ".join(f"{n + ' (ms)':>14}" for n in names) + f" {'speedup':>8} {'max |diff|':>11}")
    for n in args.sizes:
        d, e = kratzer_like(n)
        res = {name: best_of(lambda b=kernels.get_backend(name): b.tridiag_lowest(d, e, args.k), args.repeat)
               for name in names}
        row = f"{n:>6} " + " ".join(f"{res[name][0] * 1e3:>14.2f}" for name in names)
        if len(names) == 2:
            speed = res["python"][0] / res["cython"][0]
            diff = np.abs(res["python"][1] - res["cython"][1]).max()
            row += f" {speed:>7.1f}x {diff:>11.1e}"
        print(row)


if __name__ == "__main__":
    main()
