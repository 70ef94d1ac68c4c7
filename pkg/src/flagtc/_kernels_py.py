"""Pure-Python versions of the search kernels; same signatures as _kernels.pyx.

Tables are flat arrays over the box [0, h]^k in row-major order with radix
h + 1.  ``ctab[v]`` is the top coefficient of x^v and ``ttab[a]`` the top
coefficient of P * x^a for the fixed factor-1 element P of a search.
"""


def _options(n, h):
    opts = []
    a = n
    while True:
        if a <= h and n - a <= h:
            opts.append(a)
        if a == 0:
            break
        a = (a - 1) & n
    return opts


def top_pairing_batch(cands, ctab, ttab, h, dim):
    """For each exponent vector n in `cands` (rows), the parity of
    sum over Lucas submasks a of n with |n - a| = dim of ctab[n - a] * ttab[a]."""
    base = h + 1
    out = bytearray(len(cands))
    for row, n in enumerate(cands):
        n = [int(x) for x in n]
        k = len(n)
        per = [_options(x, h) for x in n]
        if any(not p for p in per):
            continue
        acc = 0
        # depth-first over coordinates carrying (index of n-a, index of a, degree of n-a)
        stack = [(0, 0, 0, 0)]
        while stack:
            j, ci, ti, deg = stack.pop()
            if j == k:
                if deg == dim:
                    acc ^= ctab[ci] & ttab[ti]
                continue
            nj = n[j]
            for a in per[j]:
                r = nj - a
                if deg + r > dim:
                    continue
                stack.append((j + 1, ci * base + r, ti * base + a, deg + r))
        out[row] = acc
    return out


def group_top_lefts(n, ctab, h, dim):
    """Flat indices of the left exponents a (Lucas submasks of n) with
    ctab[n - a] = 1 and |n - a| = dim."""
    base = h + 1
    k = len(n)
    per = [_options(int(x), h) for x in n]
    if any(not p for p in per):
        return []
    found = []
    stack = [(0, 0, 0, 0)]
    while stack:
        j, ci, ti, deg = stack.pop()
        if j == k:
            if deg == dim and ctab[ci]:
                found.append(ti)
            continue
        nj = int(n[j])
        for a in per[j]:
            r = nj - a
            if deg + r > dim:
                continue
            stack.append((j + 1, ci * base + r, ti * base + a, deg + r))
    return sorted(found)
