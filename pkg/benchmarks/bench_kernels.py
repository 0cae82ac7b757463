"""Time the compiled kernels against the pure-Python twins.

Both backends are loaded directly, checked for identical output on every
workload, then timed on seeded random matrices.  Run from the repository
root after an editable install:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --rows 96 --cols 128 --reps 5
"""

from __future__ import annotations

import argparse
import random
import time
from array import array

from sumrank import _core_py
from sumrank.field import FiniteField

try:
    from sumrank import _core
except ImportError:
    _core = None


def random_flat(rng, q, nrows, ncols):
    return array("i", (rng.randrange(q) for _ in range(nrows * ncols)))


def make_workloads(field, rows, cols, seed):
    rng = random.Random(seed)
    q = field.q
    t = field.tables
    a = random_flat(rng, q, rows, cols)
    thin = random_flat(rng, q, rows // 2, cols)
    b = random_flat(rng, q, cols, rows)
    # membership queries against the reduced form of a
    rank, pivots, reduced = _core_py.rref(array("i", a), rows, cols, t)
    probes = [random_flat(rng, q, 1, cols) for _ in range(32)]
    return [
        ("rref", lambda impl: impl.rref(array("i", a), rows, cols, t)),
        (
            "nullspace",
            lambda impl: impl.nullspace(array("i", thin), rows // 2, cols, t),
        ),
        ("matmul", lambda impl: impl.matmul(array("i", a), rows, cols, b, rows, t)),
        (
            "in_rowspace",
            lambda impl: [
                impl.in_rowspace(array("i", reduced), rank, cols, pivots, v, t)
                for v in probes
            ],
        ),
    ]


def normalize(value):
    if isinstance(value, (list, tuple)):
        return tuple(normalize(v) for v in value)
    if isinstance(value, array):
        return tuple(value)
    return value


def timed(fn, impl, reps):
    best = None
    for _ in range(reps):
        start = time.perf_counter()
        fn(impl)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=64)
    parser.add_argument("--cols", type=int, default=96)
    parser.add_argument("--reps", type=int, default=9)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    fields = [
        ("GF(4)", FiniteField(2, 2, (1, 1, 1))),
        ("GF(9)", FiniteField(3, 2, (1, 0, 1))),
        ("GF(256)", FiniteField(2, 8, (1, 0, 1, 1, 1, 0, 0, 0, 1))),
    ]
    if _core is None:
        print("compiled backend not importable; timing the fallback only")
    header = f"{'field':>8} {'workload':>12} {'python':>10}"
    if _core is not None:
        header += f" {'compiled':>10} {'speedup':>8}"
    print(header)
    for label, field in fields:
        for name, fn in make_workloads(field, args.rows, args.cols, args.seed):
            if _core is not None and normalize(fn(_core)) != normalize(fn(_core_py)):
                raise SystemExit(f"backend outputs differ on {label} {name}")
            py = timed(fn, _core_py, args.reps)
            line = f"{label:>8} {name:>12} {py * 1e3:>8.2f}ms"
            if _core is not None:
                cy = timed(fn, _core, args.reps)
                line += f" {cy * 1e3:>8.2f}ms {py / cy:>7.1f}x"
            print(line)


if __name__ == "__main__":
    main()
