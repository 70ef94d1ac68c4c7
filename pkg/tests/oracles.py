"""Slow reference implementations shared by the tests.

Nothing here goes through the tensor-ring group expansion or the top
functional; products are formed one zero-divisor at a time on dicts of
s-tuples of basis ranks.
"""
from flagtc.flag_ring import iter_bits


def naive_tensor_product(base, s, factors):
    """factors: iterable of (i, j, n).  Returns a set of rank tuples."""
    gens = []
    for j in range(1, base.nvars + 1):
        v = tuple(int(t == j - 1) for t in range(base.nvars))
        gens.append(base.monomial_bits(v))
    one = tuple([base.one_rank] * s)
    cur = {one}
    for i, j, n in factors:
        for _ in range(n):
            nxt = set()
            for t in cur:
                for slot in (0, i - 1):
                    prod = base.mul_bits(1 << t[slot], gens[j - 1])
                    for r in iter_bits(prod):
                        u = list(t)
                        u[slot] = r
                        nxt ^= {tuple(u)}
            cur = nxt
    return cur


def poly_product_coeffs(factors):
    """Coefficients of prod (1 - t^a)/(1 - t) over integers, factors = [a, ...]."""
    out = [1]
    for a in factors:
        nxt = [0] * (len(out) + a - 1)
        for d, c in enumerate(out):
            for t in range(a):
                nxt[d + t] += c
        out = nxt
    return out
