"""Compare the compiled and pure-Python kernels on representative inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one line per (kernel, workload) with the best time for each backend
and the speedup of the compiled one.
"""

import argparse
import time

from tmstate import kernels
from tmstate.automata import complete_with_sink
from tmstate.classes import build_minimal
from tmstate.construction import build_projected
from tmstate.numeration import derive_params


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    for m, r, p in [(201, 100, 1), (1001, 500, 1), (255, 7, 2), (1023, 9, 3)]:
        a = build_projected(m, r, p)
        table, fin = a.table, a.final_mask()
        yield "hopcroft", f"projected m={m} p={p} ({a.state_count} states)", lambda t=table, f=fin: kernels.hopcroft(t, f)

    for m, r, p, length in [(24, 23, 2, 8), (63, 31, 3, 6), (101, 50, 1, 16)]:
        a = complete_with_sink(build_minimal(m, r, p))
        args = (a.table, a.final_mask(), a.initial, a.alphabet_size, length, m, r, False, 10)
        words = (a.alphabet_size ** (length + 1) - 1) // (a.alphabet_size - 1)
        yield "sweep", f"m={m} p={p} len<={length} ({words} words)", lambda args=args: kernels.sweep(*args)

    for m, r, p, length in [(3, 1, 2, 9), (24, 23, 2, 10), (7, 3, 3, 6)]:
        b = derive_params(m, r, p).b
        yield "residual_row", f"m={m} b={b} len<={length}", lambda b=b, m=m, r=r, n=length: kernels.residual_row(5, b, n, m, r, False)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    names = sorted(kernels.BACKENDS)
    if "cython" not in names:
        print("compiled kernels not built; run `python setup.py build_ext --inplace` first")
    print(f"{'kernel':<13} {'workload':<42} " + " ".join(f"{n:>10}" for n in names) + "   speedup")
    original = kernels.backend()
    try:
        for kernel, desc, fn in workloads():
            times = {}
            for name in names:
                kernels.use_backend(name)
                times[name] = best_of(fn, args.repeat)
            cols = " ".join(f"{times[n] * 1e3:9.2f}ms" for n in names)
            speedup = f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else ""
            print(f"{kernel:<13} {desc:<42} {cols} {speedup}")
    finally:
        kernels.use_backend(original)


if __name__ == "__main__":
    main()
