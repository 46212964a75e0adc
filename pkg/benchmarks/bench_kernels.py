"""Time the compiled and pure-Python kernels on the same inputs.

Run with ``python benchmarks/bench_kernels.py``; prints one line per
kernel and backend plus the speedup.
"""

import argparse
import time

import numpy as np

from qstexture import kernels
from qstexture.states import generator, nontexture_state, random_mixed


def _roof_inputs(d, m, iters, seed):
    rho = random_mixed(d, d, generator(seed))
    w, v = np.linalg.eigh(rho)
    c = nontexture_state(d).conj() @ (v * np.sqrt(w))
    rng = generator(seed, 1)
    x = rng.standard_normal((m, d)) + 1j * rng.standard_normal((m, d))
    idx = rng.integers(0, 2 * m * d, size=iters)
    noise = rng.standard_normal(iters)
    return w, c, x, idx, noise


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--iterations", type=int, default=500)
    p.add_argument("--resolution", type=int, default=32)
    args = p.parse_args(argv)

    impls = kernels.backends()
    if "compiled" not in impls:
        print("compiled extension not built; only the Python backend is timed")
    w, c, x, idx, noise = _roof_inputs(args.dim, 2 * args.dim, args.iterations, 0)
    a, b = np.array([0.6, 0.8j])
    mu, nu = np.array([0.28, 0.96])
    jobs = {
        "roof_search": lambda k: k.roof_search(w, c, kernels.SQRT_COMPLEMENT, x, idx, noise,
                                               0.5, 0.9, 1.5, 1e-10),
        "maxprob_grid": lambda k: k.maxprob_grid(a, b, mu, nu, args.resolution, 40, 0.3, 0.7),
    }
    for name, job in jobs.items():
        times = {}
        for backend, impl in impls.items():
            times[backend] = _time(lambda: job(impl), args.repeats)
            print(f"{name:14s} {backend:9s} {times[backend] * 1e3:10.2f} ms")
        if len(times) == 2:
            print(f"{name:14s} speedup   {times['python'] / times['compiled']:10.1f}x")


if __name__ == "__main__":
    main()
