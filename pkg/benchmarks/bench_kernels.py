"""Time each kernel under the numba and numpy backends.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Inputs are grid lattices and random partial tables; the first numba call
(JIT compile or cache load) is excluded from the timings.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from tlat import ChainPair, enumerate_lattice
from tlat import _kernels as K


def _best(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    L = enumerate_lattice(ChainPair(4, 4))          # 252 elements
    S = enumerate_lattice(ChainPair(3, 3))          # 70 elements
    rng = np.random.default_rng(0)
    n = len(S)
    Lr = rng.random((n, n)) < 0.05
    Ur = rng.random((n, n)) < 0.05
    Mp = np.where(rng.random((n, n)) < 0.2, -1, S.M)
    Jp = np.where(rng.random((n, n)) < 0.2, -1, S.J)
    pairs = np.array([[3, 40]])
    yield "transitive_closure (252)", lambda b: K.transitive_closure(L.leq, b)
    yield "glb_table (252)", lambda b: K.glb_table(L.leq, b)
    yield "first_failing_triple distributive (252)", \
        lambda b: K.first_failing_triple(L.M, L.J, L.leq, K.DISTRIB_MEET, b)
    yield "congruence_closure (252)", lambda b: K.congruence_closure(L.M, L.J, pairs, b)
    yield "scan_saturation (70)", lambda b: K.scan_saturation(S.M, S.J, S.leq, Lr, Ur, b)
    yield "scan_equations modular (70, partial)", \
        lambda b: K.scan_equations(Mp, Jp, S.leq, Lr, Ur, True, b)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = ["numpy"] + (["numba"] if K.njit is not None else [])
    print(f"{'kernel':42} " + " ".join(f"{b:>10}" for b in backends) + "    speedup")
    for name, fn in cases():
        t = {b: _best(lambda: fn(b), args.repeat) for b in backends}
        row = f"{name:42} " + " ".join(f"{t[b] * 1e3:8.2f}ms" for b in backends)
        if "numba" in t:
            row += f"  {t['numpy'] / t['numba']:8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
