"""Time the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import timeit
from itertools import combinations

from wildmatroid import _kernels_py

try:
    from wildmatroid import _kernels as _compiled
except ImportError:
    _compiled = None


def uniform_bases(r: int, n: int) -> list[int]:
    return [sum(1 << i for i in c) for c in combinations(range(n), r)]


def workloads(rng: random.Random):
    n = 16
    bases = uniform_bases(8, n)
    table = _kernels_py.down_closure(n, bases)
    circuits = _kernels_py.minimal_absent(n, table)
    small = uniform_bases(3, 12)
    return {
        "down_closure U(8,16)": lambda k: k.down_closure(n, bases),
        "minimal_absent U(8,16)": lambda k: k.minimal_absent(n, table),
        "maximal_present U(8,16)": lambda k: k.maximal_present(n, table),
        "pairwise_or U(3,12)^2": lambda k: k.pairwise_or(small, small),
        "max_common circuits": lambda k: k.max_common(circuits[:800], rng.sample(circuits, 800)),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    backends = {"python": _kernels_py}
    if _compiled is not None:
        backends["cython"] = _compiled
    else:
        print("compiled kernels not built; timing the fallback only")
    print(f"{'workload':28s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name, fn in workloads(random.Random(args.seed)).items():
        times = [min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)) for k in backends.values()]
        row = f"{name:28s}" + "".join(f"{t * 1e3:10.1f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
