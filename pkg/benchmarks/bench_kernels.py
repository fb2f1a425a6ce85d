"""Compiled vs pure-Python pushout kernel on one slice of the equivalence sweep.

    python3 benchmarks/bench_kernels.py [--ring 12] [--max-ambient 16]
"""
import argparse
import time

import numpy as np

from zpartial import _kernels_py, kernels
from zpartial.corpus import modules_up_to
from zpartial.modules import enumerate_subobjects
from zpartial.sweeps import hom_chunks


def batches(m, max_ambient, max_codomain):
    for X in modules_up_to(m, max_ambient):
        for u in enumerate_subobjects(X):
            U = u.source
            umat = np.array(u.matrix, dtype=np.int64).reshape(U.ngens, X.ngens)
            for Y in modules_up_to(m, max_codomain):
                for F in hom_chunks(U, Y):
                    yield (m, U.invariant_factors, X.invariant_factors, Y.invariant_factors, umat, F)


def timed(fn, work):
    t = time.perf_counter()
    out = [fn(*args, want_iso=True) for args in work]
    return time.perf_counter() - t, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ring", type=int, default=12)
    ap.add_argument("--max-ambient", type=int, default=16)
    ap.add_argument("--max-codomain", type=int, default=8)
    args = ap.parse_args()
    work = list(batches(args.ring, args.max_ambient, args.max_codomain))
    n = sum(len(w[-1]) for w in work)
    print(f"ring Z/{args.ring}: {n} maps in {len(work)} batches")
    t_py, out_py = timed(_kernels_py.pushout_verdicts, work)
    print(f"python  {t_py:8.3f} s  {n / t_py:12.0f} maps/s")
    if kernels.BACKEND != "cython":
        print("compiled kernel not built; skipping")
        return
    t_cy, out_cy = timed(kernels.pushout_verdicts, work)
    print(f"cython  {t_cy:8.3f} s  {n / t_cy:12.0f} maps/s  ({t_py / t_cy:.0f}x)")
    same = all(np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
               for a, b in zip(out_py, out_cy))
    print("verdicts identical:", same)


if __name__ == "__main__":
    main()
