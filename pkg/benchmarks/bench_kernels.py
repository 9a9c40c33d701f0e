"""Time each kernel under the compiled and the numpy backend.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--scale 1.0]
"""
import argparse
import timeit

import numpy as np

from llip import kernels
from llip.grid import make_interval_grid
from llip.sampling import random_field


def workloads(rng, scale):
    m, n = 10, int(2000 * scale)
    G = rng.normal(size=(m, n))
    TG = rng.normal(size=(m, n))
    phi = np.abs(rng.normal(size=n))
    f = rng.normal(size=n)
    pts = rng.uniform(size=(int(800 * scale), 1))
    vals = rng.normal(size=len(pts))
    field = random_field(rng, make_interval_grid(0, 1, int(2000 * scale)), n_break=(20, 40))
    packed = (field._offsets, field._bps, field._vals, field._left, field._right)
    r = rng.uniform(-5, 5, size=len(field.slices))
    return {
        "pair_envelope": lambda k: k.pair_envelope(G, TG, 1e-12),
        "pair_violation": lambda k: k.pair_violation(G, TG, phi),
        "mcshane_whitney": lambda k: k.mcshane_whitney(G, TG, phi, f),
        "distance_matrix": lambda k: k.distance_matrix(pts, kernels.EUCLIDEAN),
        "close_pairs": lambda k: k.close_pairs(pts, vals, 0.01, kernels.EUCLIDEAN),
        "lipschitz_majorant": lambda k: k.lipschitz_majorant(pts, vals, 3.0, kernels.EUCLIDEAN),
        "field_eval": lambda k: k.field_eval(*packed, r),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--scale", type=float, default=1.0)
    args = ap.parse_args()
    backends = kernels.backends()
    if "cython" not in backends:
        print("compiled backend not available; timing the numpy backend only")
    work = workloads(np.random.default_rng(0), args.scale)
    names = sorted(backends)
    print(f"{'kernel':<20}" + "".join(f"{b + ' (ms)':>16}" for b in names) + f"{'speedup':>10}")
    for name, call in work.items():
        times = {}
        for b in names:
            k = backends[b]
            call(k)
            times[b] = 1e3 * min(timeit.repeat(lambda: call(k), number=1, repeat=args.repeat))
        speed = f"{times['python'] / times['cython']:.1f}x" if "cython" in times else "-"
        print(f"{name:<20}" + "".join(f"{times[b]:>16.3f}" for b in names) + f"{speed:>10}")


if __name__ == "__main__":
    main()
