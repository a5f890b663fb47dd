"""Benchmark the shortest-path backends on k-NN merged graphs.

Times the all-pairs geodesic stage (the pipeline's hot kernel) for the numba
Dijkstra backend against the pure-numpy Floyd-Warshall fallback on the same
graphs. JIT compilation is warmed before timing.

Usage:
    python3 benchmarks/bench_backends.py --sizes 500,1000,2000 --k 15
"""

import argparse
import os
import time

import numpy as np


def build_graph(n, k, seed):
    from hazemap.datasets import DatasetSpec, generate
    from hazemap.graphs import aggregate, assemble
    from hazemap.schemes import MinScheme
    from hazemap.stars import build_star, knn

    cloud = generate(DatasetSpec(kind="swiss_roll", n=n, seed=seed))
    stars = [build_star(nl, False, "chain", 1.0, cloud) for nl in knn(cloud, k)]
    return aggregate(assemble(stars, cloud.n), MinScheme())


def time_backend(backend, hazy, repeats):
    from hazemap.backends import BACKEND_ENV
    from hazemap.graphs import geodesics

    os.environ[BACKEND_ENV] = backend
    geodesics(hazy, "cap")  # warm (JIT compile / cache load)
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        result = geodesics(hazy, "cap")
        times.append(time.perf_counter() - start)
    return min(times), result.matrix.values


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="500,1000,2000",
                        help="comma-separated vertex counts")
    parser.add_argument("--k", type=int, default=15)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    try:
        import numba  # noqa: F401
        backends = ["numba", "numpy"]
    except ImportError:
        print("numba not importable; timing the numpy fallback only")
        backends = ["numpy"]

    print(f"{'n':>6} {'edges':>8} " + " ".join(f"{b:>12}" for b in backends)
          + ("   speedup" if len(backends) == 2 else ""))
    for n in sizes:
        hazy = build_graph(n, args.k, args.seed)
        row = [f"{n:>6} {len(hazy.edges):>8}"]
        results = {}
        for backend in backends:
            elapsed, dist = time_backend(backend, hazy, args.repeats)
            results[backend] = (elapsed, dist)
            row.append(f"{elapsed:>11.3f}s")
        if len(backends) == 2:
            a, b = results["numba"], results["numpy"]
            # different path-sum association orders: equal only to rounding
            if not np.allclose(a[1], b[1], rtol=1e-9, atol=1e-12):
                raise AssertionError("backends disagree beyond rounding")
            row.append(f"{b[0] / a[0]:>8.1f}x")
        print(" ".join(row))


if __name__ == "__main__":
    main()
