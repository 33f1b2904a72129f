"""Time the compiled Dirichlet kernel against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--heights 512] [--terms 20000] [--repeat 3]

The workload is the direct L-value sum on a block of heights near t = 1000,
the shape the moment integrand produces.  Results of the two backends are
compared before timing.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from critline.kernels import available_backends, cheb_nodes, fit_piecewise, smoothed_dirichlet


def workload(heights: int, terms: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    t = np.sort(rng.uniform(1000.0, 1100.0, heights))
    logn = np.log(np.arange(1, terms + 1, dtype=np.float64))
    coef = rng.standard_normal(terms) / np.sqrt(np.arange(1, terms + 1))
    shift = np.log(t / (2 * np.pi))
    nodes = cheb_nodes(-3.0, 3.0, 8, 24)
    weight = fit_piecewise(np.exp(-np.exp(nodes)), -3.0, 3.0, 1.0)
    return t, coef, logn, shift, weight


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--heights", type=int, default=512)
    p.add_argument("--terms", type=int, default=20_000)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--workers", type=int, default=1)
    args = p.parse_args(argv)

    t, coef, logn, shift, weight = workload(args.heights, args.terms)
    run = {b: (lambda b=b: smoothed_dirichlet(t, coef, logn, 1, shift, weight, workers=args.workers, backend=b))
           for b in available_backends()}
    if len(run) == 2:
        diff = np.max(np.abs(run["compiled"]() - run["python"]()))
        print(f"max |compiled - python| = {diff:.2e}")
    print(f"{args.heights} heights x {args.terms} terms, {args.workers} worker(s), best of {args.repeat}")
    secs = {b: best_of(fn, args.repeat) for b, fn in run.items()}
    for b, s in secs.items():
        print(f"{b:>9}: {s:8.3f} s")
    if len(secs) == 2:
        print(f"  speedup: {secs['python'] / secs['compiled']:.1f}x")


if __name__ == "__main__":
    main()
