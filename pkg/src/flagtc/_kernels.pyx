# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; see _kernels_py for the reference semantics."""
import numpy as np
cimport numpy as cnp

DEF MAXK = 32
DEF OPTW = 256


cdef int _options(long n, long h, long* out) nogil:
    cdef long a = n
    cdef int count = 0
    while True:
        if a <= h and n - a <= h:
            out[count] = a
            count += 1
        if a == 0:
            break
        a = (a - 1) & n
    return count


cdef int _pair_one(long* n, int k, const unsigned char* ctab, const unsigned char* ttab,
                   long h, long dim, long* opts, int* nopts) nogil:
    cdef long base = h + 1
    cdef int pos[MAXK]
    cdef long cidx[MAXK + 1]
    cdef long tidx[MAXK + 1]
    cdef long deg[MAXK + 1]
    cdef int j = 0
    cdef int acc = 0
    cdef long a, r
    for j in range(k):
        nopts[j] = _options(n[j], h, opts + j * OPTW)
        if nopts[j] == 0:
            return 0
        pos[j] = 0
    cidx[0] = 0
    tidx[0] = 0
    deg[0] = 0
    j = 0
    while j >= 0:
        if pos[j] >= nopts[j]:
            pos[j] = 0
            j -= 1
            if j >= 0:
                pos[j] += 1
            continue
        a = opts[j * OPTW + pos[j]]
        r = n[j] - a
        if deg[j] + r > dim:
            pos[j] += 1
            continue
        cidx[j + 1] = cidx[j] * base + r
        tidx[j + 1] = tidx[j] * base + a
        deg[j + 1] = deg[j] + r
        if j + 1 == k:
            if deg[k] == dim:
                acc ^= ctab[cidx[k]] & ttab[tidx[k]]
            pos[j] += 1
        else:
            j += 1
    return acc


def top_pairing_batch(cands, const unsigned char[::1] ctab, const unsigned char[::1] ttab,
                      long h, long dim):
    if len(cands) == 0:
        return bytearray()
    arr = np.ascontiguousarray(cands, dtype=np.int_).reshape(len(cands), -1)
    if arr.max() >= OPTW:
        raise ValueError("exponent too large for the compiled kernel")
    cdef long[:, ::1] c = arr
    cdef Py_ssize_t nrows = c.shape[0]
    cdef int k = c.shape[1] if nrows else 0
    if k > MAXK:
        raise ValueError("too many generators for the compiled kernel")
    out = np.zeros(nrows, dtype=np.uint8)
    cdef unsigned char[::1] o = out
    cdef long opts[MAXK * OPTW]
    cdef int nopts[MAXK]
    cdef Py_ssize_t row
    with nogil:
        for row in range(nrows):
            o[row] = _pair_one(&c[row, 0], k, &ctab[0], &ttab[0], h, dim, opts, nopts)
    return bytearray(out)


def group_top_lefts(n, const unsigned char[::1] ctab, long h, long dim):
    cdef long base = h + 1
    cdef int k = len(n)
    cdef long nn[MAXK]
    cdef long opts[MAXK * OPTW]
    cdef int nopts[MAXK]
    cdef int pos[MAXK]
    cdef long cidx[MAXK + 1]
    cdef long tidx[MAXK + 1]
    cdef long deg[MAXK + 1]
    cdef int j
    cdef long a, r
    if k > MAXK:
        raise ValueError("too many generators for the compiled kernel")
    for j in range(k):
        nn[j] = n[j]
        if nn[j] >= OPTW:
            raise ValueError("exponent too large for the compiled kernel")
        nopts[j] = _options(nn[j], h, opts + j * OPTW)
        if nopts[j] == 0:
            return []
        pos[j] = 0
    found = []
    cidx[0] = 0
    tidx[0] = 0
    deg[0] = 0
    j = 0
    while j >= 0:
        if pos[j] >= nopts[j]:
            pos[j] = 0
            j -= 1
            if j >= 0:
                pos[j] += 1
            continue
        a = opts[j * OPTW + pos[j]]
        r = nn[j] - a
        if deg[j] + r > dim:
            pos[j] += 1
            continue
        cidx[j + 1] = cidx[j] * base + r
        tidx[j + 1] = tidx[j] * base + a
        deg[j + 1] = deg[j] + r
        if j + 1 == k:
            if deg[k] == dim and ctab[cidx[k]]:
                found.append(tidx[k])
            pos[j] += 1
        else:
            j += 1
    return sorted(found)
