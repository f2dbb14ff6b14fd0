"""Compare the numba kernels against the numpy fallback path.

Correctness is asserted before anything is timed: both backends must produce
identical vector lists on every workload.  Timings are best-of-three after a
warm-up call, so numba's compilation cost is not billed to the kernel.

Run from the repository root:

    python3 benchmarks/bench_backends.py
"""

import time

from latscreen import all_screeners, box_enumerate, catalog, enumerate_up_to_norm
from latscreen.enumeration import _kernels

REPEAT = 3

WORKLOADS = [
    ("enumerate A4 <= 20", lambda b: enumerate_up_to_norm(catalog("A", 4), 20, backend=b)),
    ("enumerate D6 <= 8", lambda b: enumerate_up_to_norm(catalog("D", 6), 8, backend=b)),
    ("enumerate E8 <= 4", lambda b: enumerate_up_to_norm(catalog("E", 8), 4, backend=b)),
    ("box scan D4 <= 8", lambda b: box_enumerate(catalog("D", 4), 8, backend=b)),
    ("screeners E7", lambda b: all_screeners(catalog("E", 7), backend=b)),
    ("screeners D6(2)", lambda b: all_screeners(catalog("D", 6, scale=2), backend=b)),
]


def best_of(fn, backend):
    fn(backend)  # warm-up (and JIT compile on the numba side)
    best = float("inf")
    for _ in range(REPEAT):
        t0 = time.perf_counter()
        fn(backend)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    if not _kernels.HAS_NUMBA:
        print("numba is not importable; nothing to compare")
        return

    print(f"{'workload':<22} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for label, fn in WORKLOADS:
        a = fn("numba")
        b = fn("numpy")
        assert a.vectors == b.vectors, f"{label}: backends disagree"
        t_numba = best_of(fn, "numba")
        t_numpy = best_of(fn, "numpy")
        print(f"{label:<22} {t_numba * 1e3:>8.2f}ms {t_numpy * 1e3:>8.2f}ms "
              f"{t_numpy / t_numba:>7.1f}x")


if __name__ == "__main__":
    main()
