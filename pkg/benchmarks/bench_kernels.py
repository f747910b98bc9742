"""Compare the compiled and pure-Python oracle kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time
import timeit

import numpy as np

from entangler_forge import kernels
from entangler_forge.oracle import OracleBudget, max_concurrence_k_uses


def cp(phi):
    return np.diag([1, 1, 1, np.exp(1j * phi)])


def bench_objective(name, repeat):
    impl = kernels.get_backend(name)
    rng = np.random.default_rng(0)
    gate = cp(np.pi / 4)
    state = np.array([1, 0, 0, 0], dtype=complex)
    rows = []
    for k in (1, 2, 4, 6):
        x = rng.uniform(0, 2 * np.pi, 6 * k)
        t = min(timeit.repeat(lambda: impl.objective(gate, state, x, k, kernels.MAXIMIZE),
                              number=2000, repeat=repeat)) / 2000
        rows.append((k, t))
    return rows


def bench_search(name, repeat):
    budget = OracleBudget(restarts=8, max_iterations=2000)
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = max_concurrence_k_uses(cp(np.pi / 4), 3, np.array([1, 0, 0, 0]), budget,
                                     seed=1, backend=name)
        best = min(best, time.perf_counter() - t0)
    return best, res.best_concurrence


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    names = [n for n in ("compiled", "python") if n in kernels.BACKENDS]
    print(f"active backend: {kernels.BACKEND}")
    evals = {n: bench_objective(n, args.repeat) for n in names}
    print("objective evaluation, microseconds")
    print("  k  " + "".join(f"{n:>12}" for n in names))
    for i, (k, _) in enumerate(evals[names[0]]):
        print(f"  {k}  " + "".join(f"{evals[n][i][1] * 1e6:12.2f}" for n in names))
    print("oracle search CP(pi/4), k=3, 8 restarts x 2000 iterations")
    for n in names:
        t, c = bench_search(n, args.repeat)
        print(f"  {n:>9}: {t:8.3f} s  best={c:.9f}")


if __name__ == "__main__":
    main()
