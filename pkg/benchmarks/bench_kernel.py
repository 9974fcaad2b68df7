#!/usr/bin/env python3
"""Benchmark the compiled search kernel against the pure-Python fallback.

Runs the same adjacency construction and branch-and-bound search on both
backends, checks the results agree, and reports the speedup.

    python benchmarks/bench_kernel.py
    python benchmarks/bench_kernel.py --n 10 --q 2 --pred dist-const --lambda 4
"""

import argparse
import sys
import time
from itertools import product

from basisbound import _kernel_py

try:
    from basisbound import _speedups
except ImportError:
    _speedups = None

MODES = {"dist-const": 0, "dist-mod": 1, "inter-const": 3}


def run_backend(impl, vectors, n, mode, m1, m2):
    t0 = time.perf_counter()
    adj = impl.adjacency(vectors, n, mode, m1, m2, 0)
    t1 = time.perf_counter()
    result = impl.extend_max(adj, len(vectors), (), 0, 0)
    t2 = time.perf_counter()
    return result, t1 - t0, t2 - t1


def bench(n, q, mode_name, lam, p):
    vectors = [bytes(v) for v in product(range(q), repeat=n)]
    mode = MODES[mode_name]
    m1 = lam % p if mode == 1 else lam
    m2 = p if mode == 1 else 0
    print(f"instance: n={n} q={q} {mode_name} lambda={lam}"
          + (f" p={p}" if mode == 1 else "")
          + f"  ({len(vectors)} vectors)")

    rows = []
    pure_result, pure_adj, pure_search = run_backend(
        _kernel_py, vectors, n, mode, m1, m2
    )
    rows.append(("pure", pure_result, pure_adj, pure_search))
    if _speedups is not None:
        fast_result, fast_adj, fast_search = run_backend(
            _speedups, vectors, n, mode, m1, m2
        )
        rows.append(("compiled", fast_result, fast_adj, fast_search))
        if fast_result != pure_result:
            print("BACKEND MISMATCH:", pure_result[:1], "vs", fast_result[:1])
            return 1

    print(f"{'backend':<10}{'max':>5}{'nodes':>12}{'adjacency':>12}{'search':>12}{'total':>12}")
    for name, result, adj_t, search_t in rows:
        print(
            f"{name:<10}{result[0]:>5}{result[2]:>12}"
            f"{adj_t:>11.3f}s{search_t:>11.3f}s{adj_t + search_t:>11.3f}s"
        )
    if _speedups is not None:
        total_pure = pure_adj + pure_search
        total_fast = fast_adj + fast_search
        print(f"speedup: {total_pure / total_fast:.1f}x")
    else:
        print("compiled kernel not built; only the pure backend was timed")
    return 0


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=9)
    parser.add_argument("--q", type=int, default=2)
    parser.add_argument("--pred", choices=sorted(MODES), default="dist-const")
    parser.add_argument("--lambda", dest="lam", type=int, default=4)
    parser.add_argument("--p", type=int, default=3)
    args = parser.parse_args()
    return bench(args.n, args.q, args.pred, args.lam, args.p)


if __name__ == "__main__":
    sys.exit(main())
