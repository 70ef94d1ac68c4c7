"""Normal forms by Gaussian elimination over GF(2), independent of the
rewrite system in flag_ring.

For each degree d the relation ideal's degree-d slice is spanned by the
products of every defining relation with every monomial of complementary
degree.  Columns for non-basis monomials sit above the basis columns, so
after elimination each non-basis monomial is a pivot and its row expresses
it in the basis.
"""
from __future__ import annotations

from itertools import combinations_with_replacement

from .f2poly import complete_symmetric_brute


def monomials_of_degree(nvars: int, d: int) -> list:
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


class DegreeSlice:
    def __init__(self, k: int, m: int, d: int):
        self.k, self.m, self.d = k, m, d
        bounds = [m + k - i for i in range(1, k + 1)]
        mons = monomials_of_degree(k, d)
        basis = [v for v in mons if all(e <= b for e, b in zip(v, bounds))]
        other = [v for v in mons if v not in set(basis)]
        # basis monomials take the low bits
        self.columns = basis + other
        self.index = {v: i for i, v in enumerate(self.columns)}
        self.n_basis = len(basis)
        self.basis = basis
        self.pivots = {}
        for row in self._relation_rows():
            self._insert(row)

    def _relation_rows(self):
        k, m, d = self.k, self.m, self.d
        for i in range(1, k + 1):
            deg = m + i
            if deg > d:
                continue
            rel = complete_symmetric_brute(deg, k, range(1, k + 2 - i))
            for mu in monomials_of_degree(k, d - deg):
                row = 0
                for t in rel.terms:
                    row ^= 1 << self.index[tuple(a + b for a, b in zip(t, mu))]
                yield row

    def _reduce(self, row: int) -> int:
        while row:
            top = row.bit_length() - 1
            p = self.pivots.get(top)
            if p is None:
                return row
            row ^= p
        return row

    def _insert(self, row: int):
        row = self._reduce(row)
        if row:
            self.pivots[row.bit_length() - 1] = row

    def spans_complement(self) -> bool:
        """Every non-basis monomial is eliminated and no relation survives
        among basis monomials alone."""
        return all(c in self.pivots for c in range(self.n_basis, len(self.columns))) and \
            all(c >= self.n_basis for c in self.pivots)

    def normal_form(self, v) -> frozenset:
        row = self._reduce(1 << self.index[tuple(v)])
        if row >> self.n_basis:
            raise ArithmeticError(f"{v} does not reduce onto the basis")
        return frozenset(self.columns[i] for i in range(self.n_basis) if row >> i & 1)


def oracle_normal_forms(k: int, m: int, max_degree: int = None) -> dict:
    """Map every monomial of degree <= max_degree (default dim) to its normal
    form, as a frozenset of basis exponent tuples."""
    dim = k * m + k * (k - 1) // 2
    max_degree = dim if max_degree is None else max_degree
    out = {}
    for d in range(max_degree + 1):
        sl = DegreeSlice(k, m, d)
        if not sl.spans_complement():
            raise ArithmeticError(f"degree {d} slice of F(1^{k},{m}) is inconsistent")
        for v in sl.columns:
            out[v] = sl.normal_form(v)
    return out
