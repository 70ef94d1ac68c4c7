"""Compare the compiled and pure-Python search kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends get identical candidate batches taken from two top-degree
searches; results must agree bit for bit.
"""
import argparse
import json
import time
from itertools import product

import numpy as np

from flagtc import _kernels_py
from flagtc.flag_ring import FlagRing, iter_bits
from flagtc.tensor_ring import TensorRing, top_group_polynomial
from flagtc.zcl_engine import compositions, exponent_cap

try:
    from flagtc import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def workload(k, m, s, fixed, free_degree):
    """Tables and candidates for the last tensor factor of a top-degree search."""
    base = FlagRing(k, m)
    ring = TensorRing(base, s)
    h = base.height
    ctab = base.top_table()
    p = 1
    for exps in fixed:
        bits = 0
        for a in top_group_polynomial(ring, exps):
            bits ^= base.monomial_bits(a)
        p = base.mul_bits(p, bits)
    ttab = np.zeros((h + 1) ** k, dtype=np.uint8)
    for a in product(range(h + 1), repeat=k):
        if sum(a) != free_degree - base.dim:
            continue
        acc = 0
        for r in iter_bits(p):
            v = [x + y for x, y in zip(base.basis[r], a)]
            if max(v) <= h:
                idx = 0
                for x in v:
                    idx = idx * (h + 1) + x
                acc ^= int(ctab[idx])
        idx = 0
        for x in a:
            idx = idx * (h + 1) + x
        ttab[idx] = acc
    cands = np.array(list(compositions(free_degree, [exponent_cap(base)] * k)), dtype=np.int64)
    return cands, ctab, ttab, h, base.dim


CASES = {
    "F(1^4,1) s=3": (4, 1, 3, [(7, 6, 3, 2)], 12),
    "F(1^4,5) s=3": (4, 5, 3, [(15, 14, 7, 6)], 36),
    "F(1^4,5) s=4": (4, 5, 4, [(15, 14, 7, 6), (7, 7, 7, 14)], 27),
}


def timed(fn, args, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, bytes(out)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rows = []
    for name, case in CASES.items():
        work = workload(*case)
        t_py, r_py = timed(_kernels_py.top_pairing_batch, work, args.repeat)
        row = {"case": name, "candidates": len(work[0]), "python_s": round(t_py, 5),
               "hits": sum(r_py)}
        if _kernels_c is not None:
            t_c, r_c = timed(_kernels_c.top_pairing_batch, work, args.repeat)
            if r_c != r_py:
                raise SystemExit(f"backends disagree on {name}")
            row["cython_s"] = round(t_c, 5)
            row["speedup"] = round(t_py / t_c, 1) if t_c else None
        rows.append(row)
    print(json.dumps(rows, indent=2))


if __name__ == "__main__":
    main()
