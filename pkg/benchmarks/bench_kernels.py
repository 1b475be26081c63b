"""Compare the compiled enumeration kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload is run on both backends; outputs are checked for equality
before timings are reported.
"""

from __future__ import annotations

import argparse
import sys
import timeit

from frobgpd import _kernels_py, kernels
from frobgpd.enumeration import restricted_growth_strings


def table_scan(impl, n: int, mode: int):
    return impl.scan_tables(n, 0, (n + 1) ** (n * n), mode)


def semigroupoid_scan(impl, n: int):
    out = []
    for rgs in restricted_growth_strings(2 * n):
        out.extend(tuple(t) for t in impl.semigroupoid_tables(n, list(rgs[:n]), list(rgs[n:])))
    return out


WORKLOADS = {
    "frobenius tables, n=3": lambda impl: table_scan(impl, 3, kernels.MODE_FROBENIUS),
    "hstar tables, n=3": lambda impl: table_scan(impl, 3, kernels.MODE_HSTAR),
    "semigroupoid tables, n=3": lambda impl: semigroupoid_scan(impl, 3),
    "semigroupoid tables, n=4": lambda impl: semigroupoid_scan(impl, 4),
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if kernels.BACKEND != "cython":
        print("compiled kernels are not built; run: python3 setup.py build_ext --inplace", file=sys.stderr)
        return 1
    from frobgpd import _kernels

    print(f"{'workload':28s} {'cython s':>10s} {'python s':>10s} {'speedup':>8s}")
    for name, work in WORKLOADS.items():
        if work(_kernels) != work(_kernels_py):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        fast = min(timeit.repeat(lambda: work(_kernels), number=1, repeat=args.repeat))
        slow = min(timeit.repeat(lambda: work(_kernels_py), number=1, repeat=args.repeat))
        print(f"{name:28s} {fast:10.4f} {slow:10.4f} {slow / fast:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
