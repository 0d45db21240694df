"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--trials N] [--repeat R]
"""

import argparse
import timeit

import numpy as np

from genwait import _kernels_py
from genwait.named import parse_group

try:
    from genwait import _kernels as compiled
except ImportError:
    compiled = None

GROUPS = ["S(4)", "C(2)xC(2)xC(2)xC(2)", "S(5)", "A(5)xS(3)"]


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = [("python", _kernels_py)]
    if compiled is not None:
        backends.insert(0, ("cython", compiled))
    else:
        print("compiled extension not built; timing the fallback only")

    print(f"{'group':<22}{'kernel':<18}" + "".join(f"{n:>12}" for n, _ in backends) + f"{'speedup':>10}")
    for spec in GROUPS:
        G = parse_group(spec)
        table = G.table
        rng = np.random.default_rng(1)
        gen_sets = [rng.integers(0, G.order, size=2).astype(np.int32) for _ in range(200)]
        kernels = {
            "closure x200": lambda mod: [mod.closure(table, 1, g) for g in gen_sets],
            f"sample x{args.trials}": lambda mod: mod.sample_tau_batch(table, args.trials, 7),
        }
        for label, job in kernels.items():
            times = [best_of(lambda m=mod: job(m), args.repeat) for _, mod in backends]
            ref = [job(mod) for _, mod in backends]
            assert all(np.array_equal(np.asarray(r), np.asarray(ref[0])) for r in ref)
            speed = f"{times[-1] / times[0]:>9.1f}x" if len(times) > 1 else ""
            print(f"{spec:<22}{label:<18}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
