"""Time full profile scans on each kernel backend.

    python benchmarks/bench_kernels.py [--sizes 8 10 12 14] [--repeat 3]

Uses gen_poa_general(n, rho) at sigma = 1, which has 2**n profiles. The numba
timing excludes JIT compilation (a warm-up call runs first). The exact
Fraction path is skipped above --python-max profiles.
"""

import argparse
import time
from fractions import Fraction

from ppcg.equilibria import scan_profiles
from ppcg.generators import gen_poa_general

BACKENDS = ("numba", "numpy", "python")


def best_time(game, rho, backend, repeat, workers):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = scan_profiles(game, rho, 1, budget=1 << 30, backend=backend, workers=workers)
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 10, 12, 14, 16])
    ap.add_argument("--rho", type=Fraction, default=Fraction(3, 2))
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--python-max", type=int, default=1 << 12)
    args = ap.parse_args(argv)

    warm = gen_poa_general(3, args.rho).game
    scan_profiles(warm, args.rho, 1, backend="numba")

    print(f"{'n':>3} {'profiles':>9} " + " ".join(f"{b:>10}" for b in BACKENDS) + "  numpy/numba")
    for n in args.sizes:
        game = gen_poa_general(n, args.rho).game
        total = 1 << n
        times = {}
        results = []
        for backend in BACKENDS:
            if backend == "python" and total > args.python_max:
                continue
            times[backend], res = best_time(game, args.rho, backend, args.repeat, args.workers)
            results.append(res)
        assert all(r == results[0] for r in results), f"backends disagree at n={n}"
        cells = " ".join(f"{times[b]:>9.4f}s" if b in times else f"{'-':>10}" for b in BACKENDS)
        print(f"{n:>3} {total:>9} {cells}  {times['numpy'] / times['numba']:>10.1f}x")


if __name__ == "__main__":
    main()
