"""Compare the compiled kernels with the NumPy fallback.

    python benchmarks/bench_kernels.py [--k 3 --l 4] [--repeat 3]
"""
import argparse
import timeit

import numpy as np

from ekrlab import _kernels_py
from ekrlab.partitions import vertex_set

try:
    from ekrlab import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None


def workloads(k, ell):
    vs = vertex_set(k, ell)
    base = vs.labels[0]
    perm = np.random.default_rng(0).permutation(k * ell).astype(np.intp)
    jobs = {
        "meet_tables": lambda m: m.meet_tables(base, vs.labels, ell),
        "adjacent_to": lambda m: m.adjacent_to(base, vs.labels, ell, 2),
        "permuted_codes": lambda m: m.permuted_codes(vs.labels, perm, ell),
    }
    if vs.u <= 20000:
        jobs["dense_adjacency"] = lambda m: m.dense_adjacency(vs.labels, ell, 2)
    return vs.u, jobs


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--l", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    u, jobs = workloads(args.k, args.l)
    backends = [("python", _kernels_py)] + ([("cython", _kernels_cy)] if _kernels_cy else [])
    print(f"(k, l) = ({args.k}, {args.l}), u = {u}, best of {args.repeat}")
    print(f"{'kernel':<18}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for name, job in jobs.items():
        times = [min(timeit.repeat(lambda: job(mod), number=1, repeat=args.repeat)) for _, mod in backends]
        speed = f"{times[0] / times[1]:>9.1f}x" if len(times) > 1 else f"{'n/a':>10}"
        print(f"{name:<18}" + "".join(f"{t * 1e3:>10.1f}ms" for t in times) + speed)
    if _kernels_cy is None:
        print("compiled kernels not built; only the fallback was timed")


if __name__ == "__main__":
    main()
