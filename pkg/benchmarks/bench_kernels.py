"""Compare the compiled and pure-Python search kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from almostfisher.kernels import compiled_backend
from almostfisher.search import branch_and_bound_max_family, brute_force_max_family

CASES = [
    ("brute n=4 grid", lambda b: [brute_force_max_family(4, k, lam, backend=b)
                                  for k in range(3) for lam in range(5)]),
    ("bnb (5,3,1)", lambda b: branch_and_bound_max_family(5, 3, 1, backend=b)),
    ("bnb (5,2,0)", lambda b: branch_and_bound_max_family(5, 2, 0, backend=b)),
    ("bnb (6,1,1)", lambda b: branch_and_bound_max_family(6, 1, 1, backend=b)),
    ("bnb (6,2,2)", lambda b: branch_and_bound_max_family(6, 2, 2, backend=b)),
    ("bnb (6,3,0)", lambda b: branch_and_bound_max_family(6, 3, 0, backend=b)),
]


def best_time(fn, backend: str, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(backend)
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if compiled_backend is None:
        print("compiled kernels not built; only the Python backend is available")
    print(f"{'case':<18}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for name, fn in CASES:
        py = best_time(fn, "python", args.repeat)
        if compiled_backend is None:
            print(f"{name:<18}{py:>12.4f}{'-':>12}{'-':>10}")
            continue
        c = best_time(fn, "compiled", args.repeat)
        print(f"{name:<18}{py:>12.4f}{c:>12.4f}{py / c:>9.1f}x")


if __name__ == "__main__":
    main()
