"""Compare the pure-Python and compiled kernels on representative workloads.

Workloads:
  count      brute-force count of standard immaculate tableaux, shape (2,2,2,2)
  scan       exhaustive roundtrip scan of both sides for shape (3,1,2), checks on
  roundtrip  straighten + unstraighten batches on random fillings of an n=20 shape

Each timing is the best of --repeat runs.  If the compiled extension is not
built, only the pure column is reported.
"""

import argparse
import random
import time

from immaculate.composition import Composition
from immaculate.enumeration import enumerate_standard_immaculate
from immaculate._kernels import get_backend

COUNT_SHAPE = (2, 2, 2, 2)
SCAN_SHAPE = (3, 1, 2)
BIG_SHAPE = (4, 1, 4, 2, 1, 3, 2, 1, 1, 1)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_count(kernels, repeat, batch):
    ops = kernels.ShapeOps(COUNT_SHAPE)
    return best_of(ops.count_standard, repeat)


def bench_scan(kernels, repeat, batch):
    alpha = Composition(SCAN_SHAPE)
    ops = kernels.ShapeOps(SCAN_SHAPE)
    p_table = [t.flat() for t in enumerate_standard_immaculate(alpha)]
    x_size = ops.n_factorial
    y_size = len(p_table) * ops.hook_prod

    def run():
        _, fx = ops.scan_fillings(0, x_size, True)
        fy = ops.scan_pairs(p_table, 0, y_size, True)
        assert not fx and not fy

    return best_of(run, repeat)


def bench_roundtrip(kernels, repeat, batch):
    alpha = Composition(BIG_SHAPE)
    ops = kernels.ShapeOps(BIG_SHAPE)
    rng = random.Random(7)
    fillings = []
    for _ in range(batch):
        vals = list(range(1, alpha.n + 1))
        rng.shuffle(vals)
        fillings.append(vals)

    def run():
        for flat in fillings:
            p, j = ops.straighten(flat)
            assert ops.unstraighten(p, j) == flat

    return best_of(run, repeat)


BENCHES = [
    ("count " + ",".join(map(str, COUNT_SHAPE)), bench_count),
    ("scan " + ",".join(map(str, SCAN_SHAPE)), bench_scan),
    ("roundtrip n=20", bench_roundtrip),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3,
                        help="take the best of this many runs (default 3)")
    parser.add_argument("--batch", type=int, default=2000,
                        help="fillings per roundtrip batch (default 2000)")
    args = parser.parse_args()

    backends = [get_backend("pure")]
    try:
        backends.append(get_backend("compiled"))
    except ImportError:
        print("compiled extension not built; timing the pure backend only\n")

    names = [b.BACKEND for b in backends]
    header = f"{'workload':<20}" + "".join(f"{name:>12}" for name in names)
    if len(backends) == 2:
        header += "     speedup"
    print(header)
    for label, fn in BENCHES:
        times = [fn(kernels, args.repeat, args.batch) for kernels in backends]
        row = f"{label:<20}" + "".join(f"{t:>11.4f}s" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
