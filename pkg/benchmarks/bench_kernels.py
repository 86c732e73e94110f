#!/usr/bin/env python3
"""Compare the compiled threshold-simulation kernel with the pure-Python
fallback on identical inputs.

Usage: python3 benchmarks/bench_kernels.py [--count N] [--horizon-mult M]

Two timings are reported: the raw kernel loops (integer day simulation)
and the end-to-end scheduler call including trace assembly.  Both paths
must produce bit-identical results (asserted).
"""

import argparse
import math
import time
from fractions import Fraction as F

from polysched import _backend, _pykernels
from polysched.core import gstar
from polysched.instances import gen_disjoint_stars, gen_kn_adversarial, gen_random_ops
from polysched.schedulers import RfConfig, period_estimate, reduce_fastest


def build_corpus(count):
    corpus = [(f"random-{i}", gen_random_ops(7000 + i, 12, 0.5)) for i in range(count)]
    corpus.append(("stars-6", gen_disjoint_stars(6)))
    inst, tie = gen_kn_adversarial(11)
    corpus.append(("k11-adversarial", inst))
    return corpus, tie


def kernel_args(inst, x, horizon):
    gs = gstar(inst)
    denom = math.lcm(*(g.denominator for g in inst.growth))
    denom = math.lcm(denom, gs.denominator)
    gnum = [int(g * denom) for g in inst.growth]
    order = sorted(range(len(gnum)), key=lambda e: (-gnum[e], e))
    return (
        len(inst.people),
        [e.u for e in inst.edges],
        [e.v for e in inst.edges],
        gnum,
        order,
        x.numerator,
        x.denominator,
        int(gs * denom),
        horizon,
    )


def time_kernels(corpus, x, mult):
    prepared = [kernel_args(inst, x, mult * period_estimate(inst, x)) for _, inst in corpus]
    t0 = time.perf_counter()
    pure = [_pykernels.rf_simulate(*args) for args in prepared]
    t_pure = time.perf_counter() - t0
    t_fast = None
    if _backend.compiled_available():
        t0 = time.perf_counter()
        fast = [_backend.rf_simulate(*args) for args in prepared]
        t_fast = time.perf_counter() - t0
        assert fast == pure, "kernels disagree"
    return t_pure, t_fast


def time_end_to_end(corpus, tie, x, mult, force_pure):
    t0 = time.perf_counter()
    results = []
    for name, inst in corpus:
        cfg = RfConfig(
            x=x,
            horizon=mult * period_estimate(inst, x),
            tie_order=tie if name == "k11-adversarial" else None,
        )
        results.append(reduce_fastest(inst, cfg, force_pure=force_pure))
    return time.perf_counter() - t0, results


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=30)
    ap.add_argument("--horizon-mult", type=int, default=10)
    args = ap.parse_args()

    corpus, tie = build_corpus(args.count)
    x = F(4)
    days = sum(args.horizon_mult * period_estimate(i, x) for _, i in corpus)
    steps = sum(
        args.horizon_mult * period_estimate(i, x) * len(i.edges) for _, i in corpus
    )
    print(f"corpus: {len(corpus)} instances, {days} simulated days, {steps} edge-steps")
    print(f"compiled kernel available: {_backend.compiled_available()}")

    k_pure, k_fast = time_kernels(corpus, x, args.horizon_mult)
    print(f"kernel only  pure: {k_pure:8.3f}s", end="")
    if k_fast is not None:
        print(f"   compiled: {k_fast:8.3f}s   speedup: {k_pure / k_fast:6.1f}x")
    else:
        print("   (compiled kernel not built)")

    t_pure, r_pure = time_end_to_end(corpus, tie, x, args.horizon_mult, force_pure=True)
    print(f"end to end   pure: {t_pure:8.3f}s", end="")
    if _backend.compiled_available():
        t_fast, r_fast = time_end_to_end(corpus, tie, x, args.horizon_mult, force_pure=False)
        assert r_fast == r_pure, "traces disagree"
        print(f"   compiled: {t_fast:8.3f}s   speedup: {t_pure / t_fast:6.1f}x  (bit-identical)")
    else:
        print()


if __name__ == "__main__":
    main()
