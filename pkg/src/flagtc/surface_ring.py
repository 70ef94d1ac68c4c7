"""Mod-2 cohomology of the non-orientable surface N_n = #n RP^2.

Basis {1, a_1..a_n, T} with a_i a_j = 0 (i != j) and a_i^2 = T.  Elements use
the same bit-vector convention as FlagRing: rank 0 is 1, rank i is a_i and
rank n+1 is T.
"""
from __future__ import annotations

from .flag_ring import FlagRing, RingElement, iter_bits
from .tensor_ring import (
    TensorElement,
    TensorRing,
    ZDProductSpec,
    zd_product_nonzero,
)


class SurfaceRing:
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("genus must be at least 1")
        self.n = n
        self.nvars = n
        self.dim = 2
        self.size = n + 2
        self.one_rank = 0
        self.top_rank = n + 1
        self.height = 2
        self.top_exponents = (2,) + (0,) * (n - 1)
        self.basis = [(0,) * n] + [tuple(int(j == i) for j in range(n)) for i in range(n)] + [self.top_exponents]
        self.basis_degree = [0] + [1] * n + [2]
        table = {}
        for r1 in range(self.size):
            for r2 in range(self.size):
                table[(r1, r2)] = self._product(r1, r2)
        self._table = table

    def _product(self, r1, r2) -> int:
        if r1 == 0:
            return 1 << r2
        if r2 == 0:
            return 1 << r1
        if r1 <= self.n and r2 <= self.n:
            return 1 << self.top_rank if r1 == r2 else 0
        return 0

    def __repr__(self):
        return f"SurfaceRing(n={self.n})"

    @property
    def name(self) -> str:
        return f"N({self.n})"

    def __eq__(self, other):
        return isinstance(other, SurfaceRing) and self.n == other.n

    def __hash__(self):
        return hash(("N", self.n))

    def __reduce__(self):
        return (SurfaceRing, (self.n,))

    def rank(self, v) -> int:
        v = tuple(v)
        for r, b in enumerate(self.basis):
            if b == v:
                return r
        # every a_i^2 is T
        if sum(v) == 2 and max(v) == 2:
            return self.top_rank
        raise ValueError(f"{v} is not a basis exponent of {self.name}")

    def in_basis(self, v) -> bool:
        try:
            self.rank(v)
            return True
        except ValueError:
            return False

    def monomial_bits(self, v) -> int:
        v = tuple(v)
        d = sum(v)
        if d == 0:
            return 1
        if d == 1:
            return 1 << (v.index(1) + 1)
        if d == 2 and max(v) == 2:
            return 1 << self.top_rank
        return 0

    def mul_bits(self, a: int, b: int) -> int:
        out = 0
        for r1 in iter_bits(a):
            for r2 in iter_bits(b):
                out ^= self._table[(r1, r2)]
        return out

    def top_coefficient_of_monomial(self, v) -> int:
        return (self.monomial_bits(v) >> self.top_rank) & 1

    def format_rank(self, r: int) -> str:
        if r == 0:
            return "1"
        if r == self.top_rank:
            return "T"
        return f"a{r}"

    def element(self, bits) -> RingElement:
        return RingElement(self, bits)

    def one(self) -> RingElement:
        return RingElement(self, 1)

    def zero(self) -> RingElement:
        return RingElement(self, 0)

    def gen(self, i: int) -> RingElement:
        if not 1 <= i <= self.n:
            raise IndexError(f"a{i} out of range")
        return RingElement(self, 1 << i)

    def top_class(self) -> RingElement:
        return RingElement(self, 1 << self.top_rank)


def make_surface(n: int) -> SurfaceRing:
    return SurfaceRing(n)


def rp2_ring() -> FlagRing:
    """N_1 = RP^2 = F(1,2)."""
    return FlagRing(1, 2)


def phi(target: SurfaceRing, a: RingElement) -> RingElement:
    """The monomorphism H*(RP^2) -> H*(N_n) sending x1 to a_1."""
    src = a.ring
    if not (isinstance(src, FlagRing) and (src.k, src.m) == (1, 2)):
        raise ValueError("phi is defined on H*(F(1,2)) only")
    # F(1,2) ranks 0, 1, 2 are 1, x1, x1^2; N_n ranks 0, 1, n+1 are 1, a1, T
    image = {0: 0, 1: 1, 2: target.top_rank}
    bits = 0
    for r in iter_bits(a.bits):
        bits ^= 1 << image[r]
    return RingElement(target, bits)


def embed_rp2(target: TensorRing, p: TensorElement) -> TensorElement:
    """phi^{(x) s} applied to an element of H*(F(1,2))^{(x) s}."""
    if not isinstance(target.base, SurfaceRing):
        raise ValueError("target must be a tensor power of a surface ring")
    if p.ring.s != target.s:
        raise ValueError("tensor powers differ")
    image = {0: 0, 1: 1, 2: target.base.top_rank}
    return TensorElement(target, frozenset(tuple(image[r] for r in t) for t in p.terms))


def surface_certificate(s: int) -> ZDProductSpec:
    """c_{2,1}^3 c_{3,1}^3 prod_{i>=4} c_{i,1}^2."""
    if s < 3:
        raise ValueError("the certificate needs s >= 3")
    factors = [(2, 1, 3), (3, 1, 3)] + [(i, 1, 2) for i in range(4, s + 1)]
    return ZDProductSpec(tuple(factors))


def verify_surface_tcs(n: int, s: int):
    """Evaluate the surface certificate in H*(N_n)^{(x) s}; returns a TCBound."""
    from .zcl_engine import TCBound

    if s < 3:
        raise ValueError("the surface certificate needs s >= 3")
    ring = TensorRing(SurfaceRing(n), s)
    spec = surface_certificate(s)
    if not zd_product_nonzero(ring, spec):
        raise ArithmeticError(f"surface certificate vanishes in N({n})^{s}")
    return TCBound(space=f"N({n})", s=s, lower=spec.degree, upper=2 * s,
                   witness=spec.format("c"), provenance="closed-form", verified=True)
