"""Time the compiled and pure-Python Hessenberg QR kernels on random complex matrices.

    python3 benchmarks/bench_eig.py --sizes 4 8 16 32 --repeat 5
"""
import argparse
import time

import numpy as np

from schurlike.eigen_num import available_backends, eigvals


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32, 64])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = available_backends()
    g = np.random.default_rng(args.seed)
    print("size  " + "  ".join(f"{b:>12}" for b in backends) + "   speedup   max |dev| vs numpy")
    for n in args.sizes:
        X = g.standard_normal((n, n)) + 1j * g.standard_normal((n, n))
        ref = np.sort_complex(np.linalg.eigvals(X))
        row = {}
        dev = 0.0
        for b in backends:
            row[b] = best_of(lambda: eigvals(X, backend=b), args.repeat)
            dev = max(dev, float(np.max(np.abs(np.sort_complex(eigvals(X, backend=b)) - ref))))
        speed = row["python"] / row["compiled"] if "compiled" in row else float("nan")
        cells = "  ".join(f"{row[b] * 1e3:10.2f}ms" for b in backends)
        print(f"{n:4d}  {cells}   {speed:7.1f}x   {dev:.1e}")


if __name__ == "__main__":
    main()
