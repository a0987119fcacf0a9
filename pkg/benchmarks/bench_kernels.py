"""Compare the compiled bitset kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--three]

``--three`` adds the 3-atom rigidity enumeration (2**27 relations), which is
only practical with the compiled kernels.
"""
from __future__ import annotations

import argparse
import random
import time

from dvpower import _bitkernels_py as python_kernels
from dvpower import kernels


def order_rows(n: int) -> list[int]:
    size = 1 << n
    return [sum(1 << b for b in range(size) if a & ~b == 0) for a in range(size)]


def random_subrelations(n: int, count: int, seed: int = 0) -> list[list[int]]:
    rng = random.Random(seed)
    base = order_rows(n)
    size = 1 << n
    return [[row & sum(1 << b for b in range(size) if rng.random() < 0.95) for row in base] for _ in range(count)]


def timed(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--three", action="store_true")
    args = parser.parse_args()

    impls = {"python": python_kernels}
    if kernels.compiled_kernels is not None:
        impls["compiled"] = kernels.compiled_kernels
    else:
        print("compiled kernels not built; timing the fallback only")

    cases = {
        "dv_passes(3 atoms, 2000 relations)": lambda k, rels=random_subrelations(3, 2000): [k.dv_passes(3, r) for r in rels],
        "dv_counterexamples(5 atoms, order)": lambda k, r=order_rows(5): k.dv_counterexamples(5, r),
        "rigid_relations(1)": lambda k: k.rigid_relations(1),
        "rigid_relations(2)": lambda k: k.rigid_relations(2),
    }
    results = {}
    for name, case in cases.items():
        outputs = {label: case(k) for label, k in impls.items()}
        if len({repr(v) for v in outputs.values()}) != 1:
            raise SystemExit(f"implementations disagree on {name}")
        times = {label: timed(lambda k=k: case(k), args.repeat) for label, k in impls.items()}
        results[name] = times
    if args.three and "compiled" in impls:
        t0 = time.perf_counter()
        total, passing = impls["compiled"].rigid_relations(3)
        results["rigid_relations(3)"] = {"compiled": time.perf_counter() - t0}
        print(f"3 atoms: {len(passing)} of {total} relations pass")

    width = max(map(len, results))
    print(f"{'case':<{width}}  {'python':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, times in results.items():
        py, co = times.get("python"), times.get("compiled")
        fmt = lambda t: f"{t:10.4f}" if t is not None else f"{'-':>10}"
        speed = f"{py / co:8.1f}" if py and co else f"{'-':>8}"
        print(f"{name:<{width}}  {fmt(py)}  {fmt(co)}  {speed}")


if __name__ == "__main__":
    main()
