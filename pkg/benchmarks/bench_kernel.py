#!/usr/bin/env python3
"""Benchmark: compiled kernel vs pure-Python fallback.

Times the elimination kernels on workload-shaped inputs (differential
matrices of the eight-dimensional catalog entries, before and after a random
rational change of basis, plus a dense random matrix), then times a full
Betti-number computation end to end under both backends.

Run from the repository root:

    python benchmarks/bench_kernel.py
"""

import os
import random
import subprocess
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from nilqp import _purekernel  # noqa: E402
from nilqp import apply_basis_change, ce_differential  # noqa: E402
from nilqp.catalog import get  # noqa: E402
from nilqp.exact import ExactMatrix  # noqa: E402
from nilqp.scalars import Q0, Q1, Rational  # noqa: E402

try:
    from nilqp import _fastkernel
except ImportError:
    _fastkernel = None


def random_t(n, rng):
    coeffs = [Rational(c, d) for c, d in ((1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2))]
    m = [[Q1 if i == j else Q0 for j in range(n)] for i in range(n)]
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = coeffs[rng.randrange(len(coeffs))]
        for t in range(n):
            m[i][t] = m[i][t] + c * m[j][t]
    return ExactMatrix(m, cols=n)


def time_call(fn, *args, repeats=5):
    best = None
    for _ in range(repeats):
        copy = [list(r) for r in args[0]]
        t0 = time.perf_counter()
        fn(copy, args[1])
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def to_pairs(matrix):
    return matrix._to_pairs()


def kernel_benchmarks():
    rng = random.Random(20240611)
    cases = []
    alg = get("N5_82").algebra
    d3 = ce_differential(alg, 3)
    cases.append(("N5_82 differential d3 (70x56, sparse)", to_pairs(d3), d3.cols))
    moved = apply_basis_change(alg, random_t(8, rng))
    d3m = ce_differential(moved, 3)
    cases.append(("same after random basis change", to_pairs(d3m), d3m.cols))
    dense = [[(rng.randint(-4, 4), 1) for _ in range(40)] for _ in range(32)]
    cases.append(("dense random 32x40, entries in [-4, 4]", dense, 40))

    print(f"{'case':45s} {'pure':>10s} {'compiled':>10s} {'speedup':>8s}")
    for label, rows, ncols in cases:
        t_pure = time_call(_purekernel.rank_q, rows, ncols)
        if _fastkernel is None:
            print(f"{label:45s} {t_pure * 1e3:8.2f}ms {'n/a':>10s}")
            continue
        try:
            t_fast = time_call(_fastkernel.rank_q, rows, ncols)
            print(
                f"{label:45s} {t_pure * 1e3:8.2f}ms {t_fast * 1e3:8.2f}ms "
                f"{t_pure / t_fast:7.1f}x"
            )
        except OverflowError:
            print(f"{label:45s} {t_pure * 1e3:8.2f}ms  (overflow -> fallback)")


def end_to_end():
    here = os.path.dirname(os.path.abspath(__file__))
    script = (
        "import random, time; "
        "from nilqp import apply_basis_change, betti_numbers, backend_name; "
        "from nilqp.catalog import get; "
        "import sys; sys.path.insert(0, r'%s'); "
        "from bench_kernel import random_t; "
        "rng = random.Random(7); t0 = time.perf_counter(); "
        "algs = [get(k).algebra for k in "
        "('N1_82','N2_82','N3_82','N4_82','N5_82','g_sec6','N1_84_real')]; "
        "[betti_numbers(apply_basis_change(a, random_t(8, rng))) "
        "for a in algs for _ in range(5)]; "
        "print(f'  {backend_name()}: {time.perf_counter()-t0:.3f}s')"
    ) % here
    env = dict(os.environ, PYTHONPATH=os.path.join(here, "..", "src"))
    print("\nBetti numbers of 35 basis-changed dim-8 algebras:", flush=True)
    for pure in ("0", "1"):
        env["NILQP_PURE"] = pure
        subprocess.run([sys.executable, "-c", script], env=env, check=True)


if __name__ == "__main__":
    print(f"compiled kernel available: {_fastkernel is not None}\n")
    kernel_benchmarks()
    end_to_end()
