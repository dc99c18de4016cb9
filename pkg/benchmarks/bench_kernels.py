"""Compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Each row times one kernel call on a workload shaped like the library's hot
paths: Q(zeta_N) (x) Q(zeta_d) products, Iwasawa series products and
unramified-extension arithmetic.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time
import timeit

from cycloverify import _kernels_py as pure
from cycloverify.arith import cyclotomic_poly

try:
    from cycloverify import _kernels as compiled
except ImportError:
    compiled = None


def workloads(rng: random.Random):
    n1, n2 = 60, 12
    a = [rng.randrange(-10**6, 10**6) for _ in range(n1 * n2)]
    b = [rng.randrange(-10**6, 10**6) if rng.random() < 0.3 else 0 for _ in range(n1 * n2)]
    yield "cyclic_mul2 60x12", "cyclic_mul2", (a, b, n1, n2)

    c = pure.cyclic_mul2(a, a, n1, n2)
    phi1, phi2 = list(cyclotomic_poly(n1)), list(cyclotomic_poly(n2))
    yield "reduce2 60x12", "reduce2", (c, n1, n2, phi1, phi2)

    q = 5 ** 40
    g = [rng.randrange(q) for _ in range(24)] + [1]
    x = [rng.randrange(q) for _ in range(24)]
    y = [rng.randrange(q) for _ in range(24)]
    yield "poly_mulmod deg 24 mod 5^40", "poly_mulmod", (x, y, g, q)

    s = [rng.randrange(q) for _ in range(400)]
    t = [rng.randrange(q) for _ in range(400)]
    yield "series_mul 400 terms mod 5^40", "series_mul", (s, t, 400, q)


def end_to_end(cell: str) -> None:
    """Wall time of one acceptance cell in a fresh interpreter per backend."""
    cmd = [sys.executable, "-m", "cycloverify.cli", "run-suite", "--only", cell]
    for label, pure_flag in (("compiled", "0"), ("python", "1")):
        env = dict(os.environ, CYCLOVERIFY_PURE=pure_flag)
        t0 = time.perf_counter()
        subprocess.run(cmd, env=env, check=True, stdout=subprocess.DEVNULL)
        print(f"{cell} [{label}]: {time.perf_counter() - t0:.2f}s")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--end-to-end", metavar="CELL", help="also time a suite cell, e.g. kummer")
    args = ap.parse_args()
    if compiled is None:
        print("compiled extension not built; timing the fallback only")
    print(f"{'kernel':<32} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for label, name, call_args in workloads(random.Random(args.seed)):
        tp = min(timeit.repeat(lambda: getattr(pure, name)(*call_args), number=1, repeat=args.repeat))
        if compiled is None:
            print(f"{label:<32} {tp * 1e3:>10.2f}")
            continue
        assert getattr(compiled, name)(*call_args) == getattr(pure, name)(*call_args)
        tc = min(timeit.repeat(lambda: getattr(compiled, name)(*call_args), number=1, repeat=args.repeat))
        print(f"{label:<32} {tp * 1e3:>10.2f} {tc * 1e3:>12.2f} {tp / tc:>7.1f}x")
    if args.end_to_end:
        end_to_end(args.end_to_end)


if __name__ == "__main__":
    main()
