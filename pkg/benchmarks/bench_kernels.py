#!/usr/bin/env python3
"""Benchmark the numba and pure-numpy lanes of the hot kernels.

The two workloads mirror how the library actually spends time: batched
real trace products against a state (direct-path reports and sweeps) and
inverse-CDF tallying of uniform draws (finite-shot sampling).
"""

import argparse
import time

import numpy as np

from bzinfo import _kernels


def hermitian_stack(k, d, rng):
    g = rng.standard_normal((k, d, d)) + 1j * rng.standard_normal((k, d, d))
    return np.ascontiguousarray((g + g.conj().transpose(0, 2, 1)) / 2)


def timeit(fn, *args, repeats):
    fn(*args)  # warmup (and JIT compile for the numba lane)
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dim", type=int, default=8, help="matrix dimension")
    parser.add_argument("--effects", type=int, default=72, help="stack size for traces")
    parser.add_argument("--calls", type=int, default=2000, help="trace calls per timing")
    parser.add_argument("--draws", type=int, default=1_000_000, help="uniforms to tally")
    parser.add_argument("--outcomes", type=int, default=8)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.Generator(np.random.Philox(args.seed))
    ops = hermitian_stack(args.effects, args.dim, rng)
    rho = hermitian_stack(1, args.dim, rng)[0]
    cumulative = np.cumsum(rng.random(args.outcomes))
    cumulative /= cumulative[-1]
    uniforms = rng.random(args.draws)

    def trace_many(fn):
        def run():
            for _ in range(args.calls):
                fn(ops, rho)

        return run

    lanes = [("numpy", _kernels.np_real_trace_batch, _kernels.np_tally_inverse_cdf)]
    if _kernels.nb_real_trace_batch is not None:
        lanes.append(("numba", _kernels.nb_real_trace_batch, _kernels.nb_tally_inverse_cdf))
    else:
        print("numba lane unavailable (disabled or not installed); timing numpy only")

    print(f"selected backend: {_kernels.BACKEND}")
    print(
        f"\ntrace batch: {args.calls} calls on a ({args.effects}, {args.dim}, {args.dim}) stack"
    )
    baseline = None
    for name, trace_fn, _ in lanes:
        t = timeit(trace_many(trace_fn), repeats=args.repeats)
        baseline = baseline or t
        print(f"  {name:<6} {t * 1e3:9.2f} ms   x{baseline / t:.2f}")

    print(f"\ninverse-CDF tally: {args.draws} draws over {args.outcomes} outcomes")
    baseline = None
    for name, _, tally_fn in lanes:
        t = timeit(tally_fn, cumulative, uniforms, repeats=args.repeats)
        baseline = baseline or t
        print(f"  {name:<6} {t * 1e3:9.2f} ms   x{baseline / t:.2f}")


if __name__ == "__main__":
    main()
