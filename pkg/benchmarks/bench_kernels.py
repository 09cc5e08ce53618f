"""Time the compiled and numpy F_p kernels side by side.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload runs under every available backend. Workloads that go through
the library switch backends by rebinding the functions in ``flagrank.kernels``.
"""

import argparse
import random
import timeit
from contextlib import contextmanager

import numpy as np

from flagrank import bk, kernels
from flagrank.quiver import Quiver, QuiverRep, count_subreps
from flagrank.roots import parse_type

NAMES = ("rref_mod_p", "rank_mod_p", "nullspace_mod_p", "inverse_mod_p")


@contextmanager
def backend(name):
    saved = {n: getattr(kernels, n) for n in NAMES}
    impl = kernels.BACKENDS[name]
    for n in NAMES:
        setattr(kernels, n, getattr(impl, n))
    try:
        yield impl
    finally:
        for n, f in saved.items():
            setattr(kernels, n, f)


def workloads():
    rng = np.random.default_rng(0)
    mats = [rng.integers(0, 65537, size=(80, 80)) for _ in range(5)]
    a3 = parse_type("A3")
    tuples = list(bk.admissible_tuples(a3, ()))[::10]
    kron = Quiver.kronecker()
    rep = QuiverRep.random(kron, (3, 4), random.Random(1), 13)

    def rank80(impl):
        for m in mats:
            impl.rank_mod_p(m, 65537)

    def movability(impl):
        for t in tuples:
            bk.is_levi_movable_randomized(t, a3, (), seed=0)

    def subreps(impl):
        count_subreps(kron, rep, (1, 2))

    return {
        "rank of 5 random 80x80 matrices mod 65537": rank80,
        f"randomized movability on {len(tuples)} A3 triples": movability,
        "subrepresentation count, Kronecker (3,4) over F_13": subreps,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = sorted(kernels.BACKENDS)
    print(f"backends: {', '.join(names)} (default {kernels.BACKEND})")
    for label, fn in workloads().items():
        times = {}
        for name in names:
            with backend(name) as impl:
                times[name] = min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat))
        cells = "  ".join(f"{n} {t * 1000:9.1f} ms" for n, t in times.items())
        ratio = ""
        if "cython" in times and times["cython"] > 0:
            ratio = f"  speedup x{times['python'] / times['cython']:.1f}"
        print(f"{label:55s} {cells}{ratio}")


if __name__ == "__main__":
    main()
