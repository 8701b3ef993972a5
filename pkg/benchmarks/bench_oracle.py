"""Compare the compiled and pure-Python breadth-first search kernels.

Usage::

    python benchmarks/bench_oracle.py [--instances 20] [--size 8] [--seed 0]

Both kernels run on the same random 4-variable parity sets; their circuits
must agree exactly. Prints the per-kernel total time and the speedup.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from paritysynth import _kernel


def main(argv: list[str] | None = None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--instances", type=int, default=20)
    p.add_argument("--size", type=int, default=8)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    if _kernel.compiled_bfs_search is None:
        print("compiled kernel not built; reinstall with Cython available", file=sys.stderr)
        return 1

    rng = random.Random(args.seed)
    sets = [rng.sample(range(1, 1 << args.n), args.size) for _ in range(args.instances)]
    kernels = {"compiled": _kernel.compiled_bfs_search, "python": _kernel.pure_bfs_search}
    timings, results = {}, {}
    for name, search in kernels.items():
        start = time.perf_counter()
        results[name] = [search(args.n, S, -1, 64) for S in sets]
        timings[name] = time.perf_counter() - start
    if results["compiled"] != results["python"]:
        print("kernels disagree", file=sys.stderr)
        return 1
    mean_len = sum(len(r) for r in results["compiled"]) / len(sets)
    print(f"n={args.n} size={args.size} instances={len(sets)} mean optimal length={mean_len:.2f}")
    for name, t in timings.items():
        print(f"{name:>8}: {t:8.3f}s total, {1000 * t / len(sets):8.2f} ms per instance")
    print(f" speedup: {timings['python'] / timings['compiled']:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
