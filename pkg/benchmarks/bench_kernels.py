"""Time the compiled and pure-Python subset kernels on random belief tables.

    python benchmarks/bench_kernels.py --sizes 10 12 14 16
"""

import argparse
import random
import time

from probmodal import _pykernels

try:
    from probmodal import _ckernels
except ImportError:
    _ckernels = None


def belief_table(n, rng, focal=6):
    masses = [0] * (1 << n)
    for _ in range(focal):
        masses[rng.randrange(1, 1 << n)] += rng.randint(1, 9)
    return _pykernels.zeta(masses, n)


def kernels_for(n, table):
    total = table[-1]
    yield "zeta", lambda k: k.zeta(table, n)
    yield "mobius", lambda k: k.mobius(table, n)
    yield "monotonicity", lambda k: k.monotonicity_violation(table, n)
    yield "minimal_positive", lambda k: k.minimal_positive(table, n)
    yield "threshold", lambda k: k.threshold_family(table, n, 2, total, False)
    yield "additivity", lambda k: k.additivity_violation(table, n)
    if n <= 14:
        # 3**n pairs; the pure-Python scan is minutes long beyond this
        yield "superadditivity", lambda k: k.superadditivity_violation(table, n)


def best_of(fn, backend, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(backend)
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[10, 12, 14, 16])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    if _ckernels is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")

    rng = random.Random(args.seed)
    print(f"{'n':>3} {'kernel':<17} {'python ms':>11} {'cython ms':>11} {'speedup':>8}")
    for n in args.sizes:
        table = belief_table(n, rng)
        for name, fn in kernels_for(n, table):
            py, expected = best_of(fn, _pykernels, args.repeat)
            cy, got = best_of(fn, _ckernels, args.repeat)
            if (list(got) if isinstance(got, list) else got) != expected:
                raise SystemExit(f"backends disagree on {name} at n={n}")
            print(f"{n:>3} {name:<17} {py * 1e3:>11.2f} {cy * 1e3:>11.3f} {py / cy:>7.0f}x")


if __name__ == "__main__":
    main()
