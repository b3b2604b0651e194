"""Time the compiled and pure-Python feasibility kernels and a few enumerations.

Usage: python3 benchmarks/bench_kernels.py [--systems N] [--seed S] [--skip-enum]
"""

import argparse
import random
import time

from chamberforge import _lpkernel_py, exactgeom
from chamberforge.comtype import enumerate_realizable
from chamberforge.fan import projective_plane


def random_systems(rng, count, max_vars):
    out = []
    for _ in range(count):
        k = rng.randint(2, max_vars)
        eq = [[rng.randint(-5, 5) for _ in range(k)] for _ in range(rng.randint(0, k // 2))]
        st = [[rng.randint(-5, 5) for _ in range(k)] for _ in range(rng.randint(1, 2 * k))]
        st = [r for r in st if any(r)] or [[1] + [0] * (k - 1)]
        out.append((k, eq, st))
    return out


def timed(fn, systems):
    start = time.perf_counter()
    results = [fn(*s) for s in systems]
    return time.perf_counter() - start, results


def bench_kernels(systems):
    py_time, py_res = timed(_lpkernel_py.solve_strict, systems)
    print(f"python kernel:   {py_time:8.3f} s for {len(systems)} systems")
    if exactgeom._compiled is None:
        print("compiled kernel: not built")
        return

    def compiled(k, eq, st):
        try:
            return exactgeom._compiled.solve_strict(k, eq, st)
        except OverflowError:
            return "overflow"

    c_time, c_res = timed(compiled, systems)
    overflow = sum(1 for r in c_res if r == "overflow")
    agree = all(c == p for c, p in zip(c_res, py_res) if c != "overflow")
    print(f"compiled kernel: {c_time:8.3f} s ({py_time / c_time:.1f}x), overflow {overflow}, agree {agree}")


def bench_enumeration():
    fan = projective_plane()
    cases = {
        3: [(1, 2), (1, 3), (-2, -5)],
        4: [(-3, 2), (-1, 2), (2, 1), (2, -5)],
        5: [(-1, -3), (2, -2), (3, -2), (2, -1), (-6, 8)],
    }
    for n, alpha in cases.items():
        start = time.perf_counter()
        types = enumerate_realizable(fan, alpha)
        print(f"enumerate P2 n={n}: {len(types):5d} types in {time.perf_counter() - start:7.2f} s")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--systems", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-vars", type=int, default=8)
    parser.add_argument("--skip-enum", action="store_true")
    args = parser.parse_args()
    print(f"active kernel: {exactgeom.KERNEL}")
    bench_kernels(random_systems(random.Random(args.seed), args.systems, args.max_vars))
    if not args.skip_enum:
        bench_enumeration()


if __name__ == "__main__":
    main()
