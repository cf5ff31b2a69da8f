"""Time the brute-force kernels under both backends and an end-to-end oracle run.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import timeit

from levelplan import kernels, oracle
from levelplan.level_graph import LevelGraph


def _layer_case(m: int, seed: int) -> tuple[list[int], list[int]]:
    rng = random.Random(seed)
    return [rng.randrange(3) for _ in range(m)], [rng.randrange(3) for _ in range(m)]


def _crossing_case(n: int) -> tuple[list[int], list[int], list[int], list[int]]:
    """A crossing-free matching, so every pair is inspected."""
    pos = list(range(n)) * 2
    return pos, list(range(n)), list(range(n, 2 * n)), [1] * n


def _oracle_graph() -> LevelGraph:
    vs = [(f"a{j}", 1) for j in range(5)] + [(f"b{j}", 2) for j in range(5)] + [(f"c{j}", 3) for j in range(4)]
    es = [(f"a{j}", f"b{(j * 2) % 5}") for j in range(5)] + [(f"b{j}", f"c{j % 4}") for j in range(5)]
    es += [("c0", "a1"), ("c2", "a3")]
    return LevelGraph.build(3, vs, es)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    lower, upper = _layer_case(8, 1)
    cross = _crossing_case(200)
    g = _oracle_graph()
    print(f"{'case':<32}{'backend':<10}{'best s':>10}")
    results: dict[str, dict[str, float]] = {}
    for name in sorted(kernels.BACKENDS):
        kernels.use_backend(name)
        cases = {
            "layer_signatures(m=8)": lambda: kernels.layer_signatures(lower, upper),
            "crossing_free(n=200) x20": lambda: [kernels.crossing_free(*cross) for _ in range(20)],
            "brute_cyclic enumerate 5+5+4": lambda: oracle.brute_cyclic(g, enumerate_all=True),
            "brute_torus 5+5+4": lambda: oracle.brute_torus(g),
        }
        for case, fn in cases.items():
            best = min(timeit.repeat(fn, number=1, repeat=args.repeat))
            results.setdefault(case, {})[name] = best
            print(f"{case:<32}{name:<10}{best:>10.4f}")
    if "cython" in kernels.BACKENDS:
        print()
        for case, r in results.items():
            print(f"speedup {case:<32}{r['python'] / r['cython']:>8.1f}x")
    else:
        print("compiled backend not built; only the pure-Python timings are shown")


if __name__ == "__main__":
    main()
