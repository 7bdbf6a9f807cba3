"""Time the numba kernels against their numpy fallbacks and check they agree.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from cocycle_twist import kernels
from cocycle_twist.groups import symmetric_group
from cocycle_twist.nichols import all_words
from cocycle_twist.spin_cover import sign_table, spin_cocycle
from cocycle_twist.yd_modules import braiding, rack_module


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def cases():
    G = symmetric_group(5)
    mu = spin_cocycle(5).table
    yield "cocycle check S5", {
        "numpy": lambda: kernels._cocycle_violation_numpy(G.table, mu, 2),
        "numba": lambda: kernels._cocycle_violation_numba(G.table, mu, 2),
    }

    rng = np.random.default_rng(0)
    A = rng.integers(0, 2, size=(300, 240))
    yield "smith_mod 300x240 over Z/2", {
        b: (lambda b=b: kernels.smith_mod(A, 2, backend=b)[3]) for b in ("numpy", "numba")
    }

    n = 8
    S = sign_table(n)
    x = rng.integers(-2, 3, size=2 ** n)
    Y = rng.integers(-2, 3, size=(256, 2 ** n))
    yield "clifford left multiply, n=8", {
        b: (lambda b=b: kernels.clifford_left_mul(x, Y, S, b)) for b in ("numpy", "numba")
    }

    Ymod = rack_module(4, "q1")
    r = Ymod.rank
    psi = braiding(Ymod)
    targets = np.zeros(r * r, dtype=np.int64)
    tcoefs = np.zeros(r * r, dtype=np.int64)
    for col, entries in psi.cols.items():
        (row, c), = entries.items()
        targets[col], tcoefs[col] = row, c
    words = all_words(r, 5)
    seq = [0, 1, 2, 3, 0, 1, 2, 0, 1, 0]
    yield "braid words r=6 d=5, 10 moves", {
        b: (lambda b=b: kernels.braid_words(words, targets, tcoefs, r, seq, b)) for b in ("numpy", "numba")
    }


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    print(f"backend available: {kernels.BACKEND}")
    for name, impls in cases():
        if not kernels.HAS_NUMBA:
            impls = {"numpy": impls["numpy"]}
        else:
            impls["numba"]()  # compile outside the timing
        results = {b: best_of(fn, args.repeat) for b, fn in impls.items()}
        line = "  ".join(f"{b} {t * 1e3:9.2f} ms" for b, (t, _) in results.items())
        if len(results) == 2:
            agree = same(results["numpy"][1], results["numba"][1])
            speedup = results["numpy"][0] / max(results["numba"][0], 1e-12)
            line += f"  speedup {speedup:6.1f}x  agree {agree}"
        print(f"{name:32s} {line}")


if __name__ == "__main__":
    main()
