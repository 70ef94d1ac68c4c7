"""Mod-2 cohomology ring of the semi-complete flag manifold F(1^k, m).

The ring is F2[x1..xk] modulo h_{m+i}(x1..x_{k+1-i}), 1 <= i <= k.  Its
additive basis is the set of monomials x(n1..nk) with n_i <= m+k-i, and ring
elements are stored as Python ints used as bit vectors over that basis,
indexed by the mixed-radix rank of (n1..nk).
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import combinations, permutations, product

from .f2poly import (
    RawPoly,
    VariableCountError,
    complete_symmetric,
    elementary_symmetric,
    format_monomial,
    grlex_key,
)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))


class RingMismatchError(ValueError):
    pass


def iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def popcount(x: int) -> int:
    return bin(x).count("1")


class FlagRing:
    """H*(F(1^k, m); F2) with its normal-form rewrite system.

    >>> R = FlagRing(2, 1)
    >>> R.size, R.dim
    (6, 3)
    """

    def __init__(self, k: int, m: int):
        if k < 1 or m < 1:
            raise ValueError(f"F(1^{k},{m}): need k >= 1 and m >= 1")
        self.k = k
        self.m = m
        self.nvars = k
        self.dim = k * m + k * (k - 1) // 2
        self.bounds = tuple(m + k - i for i in range(1, k + 1))
        self.radix = tuple(b + 1 for b in self.bounds)
        strides = [1] * k
        for i in range(k - 2, -1, -1):
            strides[i] = strides[i + 1] * self.radix[i + 1]
        self.strides = tuple(strides)
        self.size = strides[0] * self.radix[0]
        self.basis = [self.unrank(r) for r in range(self.size)]
        self.basis_degree = [sum(v) for v in self.basis]
        self.top_exponents = self.bounds
        self.top_rank = self.rank(self.bounds)
        self.one_rank = 0
        self.height = m + k - 1

        self._nf = {}
        self._rules = [self._relation_rule(i) for i in range(1, k + 1)]
        self._power_nf = {}
        for i in range(1, k + 1):
            for e in range(self.bounds[i - 1] + 1, 2 * (m + k - 1) + 1):
                v = [0] * k
                v[i - 1] = e
                self._power_nf[(i, e)] = self.monomial_bits(tuple(v))
        self._mulgen = [self._generator_table(j) for j in range(1, k + 1)]
        self._basis_products = {}
        self._top_cache = {}

    def __repr__(self):
        return f"FlagRing(k={self.k}, m={self.m})"

    @property
    def name(self) -> str:
        return f"F(1^{self.k},{self.m})"

    def __eq__(self, other):
        return isinstance(other, FlagRing) and (self.k, self.m) == (other.k, other.m)

    def __hash__(self):
        return hash(("F", self.k, self.m))

    def __reduce__(self):
        return (FlagRing, (self.k, self.m))

    # -- mixed-radix indexing --------------------------------------------------

    def rank(self, v) -> int:
        r = 0
        for e, s, b in zip(v, self.strides, self.bounds):
            if not 0 <= e <= b:
                raise ValueError(f"{tuple(v)} is not a basis exponent of {self.name}")
            r += e * s
        return r

    def unrank(self, r: int) -> tuple:
        v = []
        for s, n in zip(self.strides, self.radix):
            q, r = divmod(r, s)
            v.append(q)
        return tuple(v)

    def in_basis(self, v) -> bool:
        return len(v) == self.k and all(0 <= e <= b for e, b in zip(v, self.bounds))

    # -- rewrite system --------------------------------------------------------

    def _relation_rule(self, i: int) -> RawPoly:
        """x_i^{m+k-i+1} written via h_{m+k-i+1}(x1..xi) = 0 as a combination of
        lower x_i-powers times complete symmetric polynomials in x1..x_{i-1}."""
        b = self.bounds[i - 1]
        lower = tuple(range(1, i))
        rule = RawPoly.zero(self.k)
        for t in range(1, b + 2):
            h = complete_symmetric(t, self.k, lower) if lower else (
                RawPoly.one(self.k) if t == 0 else RawPoly.zero(self.k))
            rule = rule + RawPoly.gen(self.k, i, b + 1 - t) * h
        return rule

    def monomial_bits(self, v) -> int:
        """Normal form of x^v as a bit vector over the basis."""
        v = tuple(v)
        if len(v) != self.k:
            raise VariableCountError(f"{len(v)} exponents for {self.k} generators")
        if sum(v) > self.dim:
            return 0
        cached = self._nf.get(v)
        if cached is not None:
            return cached
        i = self.k
        while i >= 1 and v[i - 1] <= self.bounds[i - 1]:
            i -= 1
        if i == 0:
            out = 1 << self.rank(v)
        else:
            # largest index whose exponent overshoots: substitute x_i^{b_i+1}
            shift = list(v)
            shift[i - 1] -= self.bounds[i - 1] + 1
            out = 0
            for t in self._rules[i - 1].terms:
                out ^= self.monomial_bits(tuple(a + c for a, c in zip(shift, t)))
        self._nf[v] = out
        return out

    def _generator_table(self, j: int) -> list:
        table = []
        for v in self.basis:
            w = list(v)
            w[j - 1] += 1
            table.append(self.monomial_bits(tuple(w)))
        return table

    def power_rule(self, i: int, e: int) -> "RingElement":
        """Cached normal form of x_i^e."""
        if (i, e) in self._power_nf:
            return RingElement(self, self._power_nf[(i, e)])
        v = [0] * self.k
        v[i - 1] = e
        return RingElement(self, self.monomial_bits(v))

    # -- bit-vector arithmetic -------------------------------------------------

    def mul_gen_bits(self, a: int, j: int) -> int:
        table = self._mulgen[j - 1]
        out = 0
        for r in iter_bits(a):
            out ^= table[r]
        return out

    def basis_product(self, r1: int, r2: int) -> int:
        if r1 > r2:
            r1, r2 = r2, r1
        key = r1 * self.size + r2
        out = self._basis_products.get(key)
        if out is None:
            if self.basis_degree[r1] + self.basis_degree[r2] > self.dim:
                out = 0
            else:
                out = 1 << r2
                for j, e in enumerate(self.basis[r1], start=1):
                    for _ in range(e):
                        out = self.mul_gen_bits(out, j)
            self._basis_products[key] = out
        return out

    def mul_bits(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        ra = list(iter_bits(a))
        rb = list(iter_bits(b))
        deg = self.basis_degree
        dim = self.dim
        out = 0
        for r1 in ra:
            d1 = deg[r1]
            for r2 in rb:
                if d1 + deg[r2] <= dim:
                    out ^= self.basis_product(r1, r2)
        return out

    def mul_monomial_bits(self, a: int, v) -> int:
        """a * x^v for an arbitrary exponent vector v."""
        if not a:
            return 0
        if sum(v) > self.dim:
            return 0
        if self.in_basis(v):
            return self.mul_bits(a, 1 << self.rank(v))
        return self.mul_bits(a, self.monomial_bits(v))

    def bits_of(self, p: RawPoly) -> int:
        if p.nvars != self.k:
            raise VariableCountError(f"{p.nvars} variables, ring has {self.k}")
        out = 0
        for t in p.terms:
            out ^= self.monomial_bits(t)
        return out

    # -- element constructors --------------------------------------------------

    def element(self, bits: int) -> "RingElement":
        return RingElement(self, bits)

    def zero(self) -> "RingElement":
        return RingElement(self, 0)

    def one(self) -> "RingElement":
        return RingElement(self, 1 << self.one_rank)

    def gen(self, i: int) -> "RingElement":
        return RingElement(self, self.monomial_bits(tuple(int(j == i) for j in range(1, self.k + 1))))

    def basis_element(self, v) -> "RingElement":
        return RingElement(self, 1 << self.rank(v))

    def top_class(self) -> "RingElement":
        return RingElement(self, 1 << self.top_rank)

    def from_terms(self, terms) -> "RingElement":
        """Build an element from basis exponent vectors; rejects non-basis input."""
        bits = 0
        for v in terms:
            v = tuple(v)
            if not self.in_basis(v):
                raise ValueError(f"{v} violates the basis bounds {self.bounds}")
            bits ^= 1 << self.rank(v)
        return RingElement(self, bits)

    def format_rank(self, r: int) -> str:
        return format_monomial(self.basis[r])

    # -- top-class functional --------------------------------------------------

    def top_coefficient_of_monomial(self, v) -> int:
        """Coefficient of the top class in x^v, computed with the rules
        x_i^{m+k-i+r} -> x_i^{m+k-i} e_r(x1..x_{i-1}) applied from x_k down,
        discarding terms whose x_i-exponent falls below m+k-i.
        This path never touches the normal-form rewrite system."""
        v = tuple(v)
        if sum(v) != self.dim:
            return 0
        return self._top(v)

    def _top(self, v: tuple) -> int:
        kk = len(v)
        if kk == 0:
            return 1
        cached = self._top_cache.get(v)
        if cached is not None:
            return cached
        mm = self.m + (self.k - kk)
        r = v[-1] - mm
        if r < 0 or r > kk - 1:
            out = 0
        else:
            head = v[:-1]
            out = 0
            for subset in combinations(range(kk - 1), r):
                w = list(head)
                for s in subset:
                    w[s] += 1
                out ^= self._top(tuple(w))
        self._top_cache[v] = out
        return out

    def top_table(self):
        """Dense table of top coefficients over the box [0, m+k-1]^k, flat in
        row-major order with radix m+k."""
        import numpy as np

        base = self.m + self.k
        table = np.zeros(base ** self.k, dtype=np.uint8)
        for v in product(range(base), repeat=self.k):
            if sum(v) == self.dim and self._top(v):
                idx = 0
                for e in v:
                    idx = idx * base + e
                table[idx] = 1
        return table


@dataclass(frozen=True)
class RingElement:
    """A normal-form element: a GF(2) set of basis monomials of one ring."""

    ring: object
    bits: int

    def _same(self, other):
        if not isinstance(other, RingElement):
            return False
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
        return True

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        return RingElement(self.ring, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other):
        if not self._same(other):
            return NotImplemented
        return RingElement(self.ring, self.ring.mul_bits(self.bits, other.bits))

    def __pow__(self, n: int):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return self.bits != 0

    def is_zero(self) -> bool:
        return self.bits == 0

    def equals(self, other) -> bool:
        self._same(other)
        return self.bits == other.bits

    def terms(self) -> list:
        """Basis exponent vectors, descending graded-lex."""
        return sorted((self.ring.basis[r] for r in iter_bits(self.bits)), key=grlex_key, reverse=True)

    def ranks(self) -> list:
        return list(iter_bits(self.bits))

    def __len__(self):
        return popcount(self.bits)

    def coefficient(self, v) -> int:
        return (self.bits >> self.ring.rank(tuple(v))) & 1

    def degree(self) -> int:
        return max((self.ring.basis_degree[r] for r in iter_bits(self.bits)), default=-1)

    def is_homogeneous(self) -> bool:
        return len({self.ring.basis_degree[r] for r in iter_bits(self.bits)}) <= 1

    def to_raw(self) -> RawPoly:
        return RawPoly(self.ring.nvars, self.terms())

    def __str__(self):
        return str(self.to_raw())

    def __repr__(self):
        return f"<{self.ring.name}: {self}>"


# -- module-level operations ---------------------------------------------------

def make_ring(k: int, m: int) -> FlagRing:
    return FlagRing(k, m)


def normal_form(ring: FlagRing, p: RawPoly) -> RingElement:
    return RingElement(ring, ring.bits_of(p))


def is_zero(a: RingElement) -> bool:
    return a.is_zero()


def equals(a: RingElement, b: RingElement) -> bool:
    return a.equals(b)


def poincare_polynomial(ring: FlagRing) -> list:
    """Coefficients of prod_{i=1}^{k} (1 - t^{m+i}) / (1 - t)."""
    coeffs = [1]
    for i in range(1, ring.k + 1):
        width = ring.m + i
        out = [0] * (len(coeffs) + width - 1)
        for d, c in enumerate(coeffs):
            for e in range(width):
                out[d + e] += c
        coeffs = out
    return coeffs


def basis_degree_counts(ring: FlagRing) -> list:
    counts = [0] * (ring.dim + 1)
    for d in ring.basis_degree:
        counts[d] += 1
    return counts


def top_projection_rewrite(ring: FlagRing, p: RawPoly) -> RingElement:
    """Reduce p only as far as needed to read its top-class coefficient.

    Terms of degree other than dim are dropped, and the rest are rewritten
    with x_i^{m+k-i+r} -> x_i^{m+k-i} e_r(x1..x_{i-1}); whatever that discards
    cannot reach the top class.  The result is either 0 or the top class.
    """
    if p.nvars != ring.k:
        raise VariableCountError(f"{p.nvars} variables, ring has {ring.k}")
    c = 0
    for t in p.terms:
        c ^= ring.top_coefficient_of_monomial(t)
    return ring.top_class() if c else ring.zero()


def top_substitution_rule(ring: FlagRing, i: int, j: int) -> RawPoly:
    """x_i^{m+k-i} e_{i-j}(x1..x_{i-1}), the stand-in for x_i^{m+k-j}."""
    if not (0 <= j <= i <= ring.k and i >= 1):
        raise ValueError("need 0 <= j <= i <= k, i >= 1")
    lower = tuple(range(1, i))
    e = elementary_symmetric(i - j, ring.k, lower) if lower else (
        RawPoly.one(ring.k) if i == j else RawPoly.zero(ring.k))
    return RawPoly.gen(ring.k, i, ring.m + ring.k - i) * e


# -- structural verification ---------------------------------------------------

@dataclass
class CheckItem:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class VerificationReport:
    title: str
    items: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    def add(self, name, passed, detail=""):
        self.items.append(CheckItem(name, bool(passed), detail))

    def failures(self):
        return [item for item in self.items if not item.passed]

    def as_dict(self):
        return {
            "title": self.title,
            "passed": self.passed,
            "count": len(self.items),
            "failures": [f.as_dict() for f in self.failures()],
        }


def _vars_str(subset):
    return ",".join(f"x{v}" for v in subset)


def verify_extended_relations(ring: FlagRing) -> VerificationReport:
    """h_{m+i}(x_l1..x_l{k-j}) = 0 for every subset and 0 <= j < i <= k."""
    report = VerificationReport(f"extended relations in {ring.name}")
    k, m = ring.k, ring.m
    for i in range(1, k + 1):
        for j in range(0, i):
            for subset in combinations(range(1, k + 1), k - j):
                h = complete_symmetric(m + i, k, subset)
                ok = normal_form(ring, h).is_zero()
                report.add(f"h_{m + i}({_vars_str(subset)})", ok)
    return report


def verify_symmetric_covariance(ring: FlagRing) -> VerificationReport:
    """Permuting the generators keeps every extended relation in the ideal."""
    report = VerificationReport(f"permuted relations in {ring.name}")
    k, m = ring.k, ring.m
    for sigma in permutations(range(1, k + 1)):
        mapping = {i + 1: sigma[i] for i in range(k)}
        for i in range(1, k + 1):
            for j in range(0, i):
                h = complete_symmetric(m + i, k, range(1, k - j + 1))
                ok = normal_form(ring, h.substitute_vars(mapping)).is_zero()
                report.add(f"sigma={sigma} h_{m + i}(x1..x{k - j})", ok)
    return report


def verify_annihilator(ring: FlagRing) -> VerificationReport:
    report = VerificationReport(f"annihilator of the top class in {ring.name}")
    k, m = ring.k, ring.m
    for j in range(1, k + 1):
        v = [0] * k
        for i in range(1, j + 1):
            v[i - 1] = m + k - i
        v[j - 1] += 1
        ok = ring.monomial_bits(tuple(v)) == 0
        report.add(f"{format_monomial(tuple(v))} = 0", ok)
    top = ring.top_class()
    report.add("top class nonzero", ring.monomial_bits(ring.top_exponents) == top.bits != 0)
    for j in range(1, k + 1):
        report.add(f"top * x{j} = 0", (top * ring.gen(j)).is_zero())
    return report


def verify_tau_relations(ring: FlagRing, max_j: int = None, max_l: int = None) -> VerificationReport:
    """(x1..xi)^l h_j(x1..xi) = 0 whenever i + j + l > m + k."""
    report = VerificationReport(f"tau relations in {ring.name}")
    k, m = ring.k, ring.m
    max_j = m + k if max_j is None else max_j
    max_l = m + k if max_l is None else max_l
    for i in range(1, k + 1):
        for ell in range(0, max_l + 1):
            tau = tuple(ell if v <= i else 0 for v in range(1, k + 1))
            for j in range(0, max_j + 1):
                if i + j + ell <= m + k:
                    continue
                if i * ell + j > ring.dim:
                    continue  # vanishes for degree reasons alone
                h = complete_symmetric(j, k, range(1, i + 1))
                bits = ring.mul_monomial_bits(ring.bits_of(h), tau)
                report.add(f"(x1..x{i})^{ell} h_{j}(x1..x{i})", bits == 0)
    return report


def verify_heights(ring: FlagRing) -> VerificationReport:
    report = VerificationReport(f"generator heights in {ring.name}")
    k, m = ring.k, ring.m
    for i in range(1, k + 1):
        v = [0] * k
        v[i - 1] = m + k - 1
        report.add(f"x{i}^{m + k - 1} != 0", ring.monomial_bits(tuple(v)) != 0)
        v[i - 1] = m + k
        report.add(f"x{i}^{m + k} = 0", ring.monomial_bits(tuple(v)) == 0)
    report.add("top class is a basis element",
               ring.monomial_bits(ring.top_exponents) == 1 << ring.top_rank)
    return report


def verify_ring(ring: FlagRing) -> list:
    return [
        verify_extended_relations(ring),
        verify_annihilator(ring),
        verify_tau_relations(ring),
        verify_heights(ring),
    ]
