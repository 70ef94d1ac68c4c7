"""Tensor powers H^{(x)s} of a base ring and products of zero-divisors.

Elements are frozensets of s-tuples of base-ring basis ranks.  The base ring
only has to provide the bit-vector interface shared by FlagRing and
SurfaceRing (size, basis_degree, dim, one_rank, top_rank, height, nvars,
monomial_bits, mul_bits, format_rank).

A zero-divisor product groups by tensor factor:
    prod_j z_{i,j}^{n_j} = sum_{a <= n bitwise} x_1^a (x) x_i^{n-a},
the sum running over Lucas submasks, so each factor i >= 2 contributes a
map  (basis rank in factor i) -> (element of factor 1).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .flag_ring import FlagRing, RingElement, RingMismatchError, iter_bits, popcount

DEFAULT_MAX_TERMS = 10 ** 8


class ResourceLimitError(RuntimeError):
    """A computation would exceed the configured term ceiling."""


def submasks(n: int):
    """All a with a & n == a, i.e. binom(n, a) odd, in decreasing order."""
    a = n
    while True:
        yield a
        if a == 0:
            return
        a = (a - 1) & n


@dataclass(frozen=True, order=True)
class ZDProductSpec:
    """prod z_{i,j}^{n}, stored as sorted ((i, j, n), ...) with no repeats."""

    factors: tuple = ()

    def __post_init__(self):
        merged = {}
        for i, j, n in self.factors:
            if i < 2:
                raise ValueError(f"factor index {i} < 2: z_{{1,j}} vanishes identically")
            if j < 1 or n < 0:
                raise ValueError(f"bad factor z[{i},{j}]^{n}")
            merged[(i, j)] = merged.get((i, j), 0) + n
        norm = tuple((i, j, n) for (i, j), n in sorted(merged.items()) if n > 0)
        object.__setattr__(self, "factors", norm)

    @classmethod
    def from_groups(cls, groups: dict) -> "ZDProductSpec":
        """groups: factor index i -> exponent sequence (n_{i,1}, ..., n_{i,k})."""
        return cls(tuple((i, j, n) for i, exps in groups.items() for j, n in enumerate(exps, start=1)))

    @property
    def degree(self) -> int:
        return sum(n for _, _, n in self.factors)

    def groups(self, nvars: int) -> dict:
        out = {}
        for i, j, n in self.factors:
            if j > nvars:
                raise ValueError(f"z[{i},{j}] needs at least {j} generators")
            out.setdefault(i, [0] * nvars)[j - 1] += n
        return {i: tuple(v) for i, v in out.items()}

    def max_factor(self) -> int:
        return max((i for i, _, _ in self.factors), default=1)

    def times(self, other: "ZDProductSpec") -> "ZDProductSpec":
        return ZDProductSpec(self.factors + other.factors)

    def format(self, symbol: str = "z") -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{symbol}[{i},{j}]^{n}" if n != 1 else f"{symbol}[{i},{j}]"
                        for i, j, n in self.factors)

    def __str__(self):
        return self.format()


class TensorRing:
    def __init__(self, base, s: int):
        if s < 2:
            raise ValueError("tensor power s must be at least 2")
        self.base = base
        self.s = s
        self.top_degree = s * base.dim
        self._groups = {}

    def __repr__(self):
        return f"TensorRing({self.base!r}, s={self.s})"

    def __eq__(self, other):
        return isinstance(other, TensorRing) and self.base == other.base and self.s == other.s

    def __hash__(self):
        return hash((self.base, self.s))

    def element(self, terms) -> "TensorElement":
        return TensorElement(self, frozenset(terms))

    def zero(self) -> "TensorElement":
        return TensorElement(self, frozenset())

    def one(self) -> "TensorElement":
        return TensorElement(self, frozenset([(self.base.one_rank,) * self.s]))

    def top_tuple(self) -> tuple:
        return (self.base.top_rank,) * self.s

    def tuple_degree(self, t) -> int:
        return sum(self.base.basis_degree[r] for r in t)

    def rank_tuple(self, monomials) -> tuple:
        """Exponent vectors (one per factor) to a tuple of basis ranks."""
        if len(monomials) != self.s:
            raise ValueError(f"need {self.s} components, got {len(monomials)}")
        return tuple(self.base.rank(tuple(v)) for v in monomials)

    # -- zero-divisor groups -------------------------------------------------

    def group_expansion(self, exps: tuple) -> dict:
        """prod_j z_{i,j}^{n_j} as {rank in factor i: bits in factor 1}."""
        cached = self._groups.get(exps)
        if cached is not None:
            return cached
        base = self.base
        h = base.height
        choices = []
        for n in exps:
            opts = [(a, n - a) for a in submasks(n) if a <= h and n - a <= h]
            if not opts:
                self._groups[exps] = {}
                return {}
            choices.append(opts)
        out = {}
        for combo in product(*choices):
            left = tuple(c[0] for c in combo)
            right = tuple(c[1] for c in combo)
            rbits = base.monomial_bits(right)
            if not rbits:
                continue
            lbits = base.monomial_bits(left)
            if not lbits:
                continue
            for r in iter_bits(rbits):
                out[r] = out.get(r, 0) ^ lbits
        out = {r: b for r, b in out.items() if b}
        self._groups[exps] = out
        return out

    def _factor_groups(self, spec: ZDProductSpec) -> list:
        groups = spec.groups(self.base.nvars)
        if spec.factors and spec.max_factor() > self.s:
            raise ValueError(f"{spec} uses a factor beyond s={self.s}")
        one = self.base.one_rank
        one_bits = 1 << one
        out = []
        for i in range(2, self.s + 1):
            if i in groups:
                out.append(self.group_expansion(groups[i]))
            else:
                out.append({one: one_bits})
        return out


class TensorElement:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: TensorRing, terms: frozenset):
        self.ring = ring
        self.terms = terms

    def _same(self, other):
        if not isinstance(other, TensorElement):
            return False
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
        return True

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        return TensorElement(self.ring, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other):
        if not self._same(other):
            return NotImplemented
        return tensor_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {self.ring.tuple_degree(t) for t in self.terms}

    def sorted_terms(self) -> list:
        base = self.ring.base
        return sorted(self.terms, key=lambda t: [base.basis[r] for r in t], reverse=True)

    def format_term(self, t) -> str:
        base = self.ring.base
        if self.ring.s == 2 and isinstance(base, FlagRing):
            parts = []
            for sym, r in zip(("l", "r"), t):
                for j, e in enumerate(base.basis[r], start=1):
                    if e:
                        parts.append(f"{sym}{j}^{e}" if e > 1 else f"{sym}{j}")
            return "*".join(parts) or "1"
        return " (x) ".join(base.format_rank(r) for r in t)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(self.format_term(t) for t in self.sorted_terms())

    def __repr__(self):
        return f"<TensorElement {len(self.terms)} terms in {self.ring!r}>"


# -- operations ----------------------------------------------------------------

def _expand_bits(factor_bits, max_terms=None):
    """All rank tuples in the tensor product of the given bit vectors."""
    count = 1
    for b in factor_bits:
        count *= popcount(b)
    if max_terms is not None and count > max_terms:
        raise ResourceLimitError(f"{count} tuples exceed the ceiling {max_terms}")
    return product(*(list(iter_bits(b)) for b in factor_bits))


def lift(ring: TensorRing, factor: int, a: RingElement) -> TensorElement:
    if not 1 <= factor <= ring.s:
        raise IndexError(f"factor {factor} out of range 1..{ring.s}")
    if a.ring != ring.base:
        raise RingMismatchError("element does not belong to the base ring")
    one = ring.base.one_rank
    terms = set()
    for r in iter_bits(a.bits):
        t = [one] * ring.s
        t[factor - 1] = r
        terms.add(tuple(t))
    return TensorElement(ring, frozenset(terms))


def generator(ring: TensorRing, factor: int, j: int) -> TensorElement:
    """x_{factor, j}, the pullback of the j-th generator along projection `factor`."""
    v = [0] * ring.base.nvars
    v[j - 1] = 1
    return lift(ring, factor, RingElement(ring.base, ring.base.monomial_bits(tuple(v))))


def zero_divisor(ring: TensorRing, i: int, j: int) -> TensorElement:
    if not 2 <= i <= ring.s:
        raise IndexError(f"zero-divisor factor index {i} out of range 2..{ring.s}")
    if not 1 <= j <= ring.base.nvars:
        raise IndexError(f"generator index {j} out of range 1..{ring.base.nvars}")
    return generator(ring, 1, j) + generator(ring, i, j)


def tensor_mul(a: TensorElement, b: TensorElement, max_terms: int = DEFAULT_MAX_TERMS) -> TensorElement:
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring!r} vs {b.ring!r}")
    base = a.ring.base
    acc = set()
    for ta in a.terms:
        for tb in b.terms:
            bits = [base.mul_bits(1 << x, 1 << y) for x, y in zip(ta, tb)]
            if not all(bits):
                continue
            for t in _expand_bits(bits, max_terms):
                acc ^= {t}
            if len(acc) > max_terms:
                raise ResourceLimitError(f"product exceeds {max_terms} terms")
    return TensorElement(a.ring, frozenset(acc))


def tensor_power(a: TensorElement, n: int) -> TensorElement:
    out = a.ring.one()
    for _ in range(n):
        out = tensor_mul(out, a)
    return out


def diagonal(a: TensorElement) -> RingElement:
    """Image under the iterated cup product H^{(x)s} -> H."""
    base = a.ring.base
    out = 0
    for t in a.terms:
        bits = 1 << t[0]
        for r in t[1:]:
            bits = base.mul_bits(bits, 1 << r)
        out ^= bits
    return RingElement(base, out)


def evaluate_zd_product(ring: TensorRing, spec: ZDProductSpec,
                        max_terms: int = DEFAULT_MAX_TERMS) -> TensorElement:
    """The full expansion of prod z_{i,j}^n in the tensor basis."""
    base = ring.base
    partial = {(): 1 << base.one_rank}
    for group in ring._factor_groups(spec):
        nxt = {}
        for key, left in partial.items():
            for r, a in group.items():
                q = base.mul_bits(left, a)
                if q:
                    nxt[key + (r,)] = q
        partial = nxt
        if len(partial) > max_terms:
            raise ResourceLimitError(f"{len(partial)} partial tuples exceed {max_terms}")
    total = sum(popcount(b) for b in partial.values())
    if total > max_terms:
        raise ResourceLimitError(f"{total} terms exceed {max_terms}")
    terms = frozenset((r1,) + key for key, left in partial.items() for r1 in iter_bits(left))
    return TensorElement(ring, terms)


def _span_basis(vectors) -> list:
    """Reduced GF(2) basis (as ints) of the span of `vectors`."""
    pivots = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                break
            v ^= p
    return list(pivots.values())


def zd_product_nonzero(ring: TensorRing, spec: ZDProductSpec) -> bool:
    """Whether prod z_{i,j}^n != 0, without listing its terms.

    The product is sum over (b_2..b_s) of (prod_i A_{i,b_i}) (x) x(b_2) ...,
    so it vanishes iff every such factor-1 product does; carrying a basis of
    the span of the partial products is enough by multilinearity."""
    if spec.degree > ring.top_degree:
        return False
    if spec.degree == ring.top_degree and hasattr(ring.base, "top_coefficient_of_monomial"):
        return bool(top_coefficient(ring, spec))
    base = ring.base
    span = [1 << base.one_rank]
    for group in ring._factor_groups(spec):
        values = _span_basis(group.values())
        span = _span_basis(base.mul_bits(p, a) for p in span for a in values)
        if not span:
            return False
    return bool(span)


def coefficient_of(a: TensorElement, monomials) -> int:
    """Coefficient of the tensor basis element given by one exponent vector per factor."""
    base = a.ring.base
    for v in monomials:
        if hasattr(base, "in_basis") and not base.in_basis(tuple(v)):
            raise ValueError(f"{tuple(v)} is outside the basis bounds {base.bounds}")
    return int(a.ring.rank_tuple(monomials) in a.terms)


def top_group_polynomial(ring: TensorRing, exps: tuple) -> dict:
    """For one factor i: {a: 1} over left exponents a whose partner x_i^{n-a}
    has odd top coefficient, i.e. the factor-1 polynomial multiplying the top
    class of factor i."""
    base = ring.base
    h = base.height
    choices = []
    for n in exps:
        opts = [(a, n - a) for a in submasks(n) if a <= h and n - a <= h]
        if not opts:
            return {}
        choices.append(opts)
    out = {}
    for combo in product(*choices):
        right = tuple(c[1] for c in combo)
        if sum(right) != base.dim:
            continue
        if base.top_coefficient_of_monomial(right):
            left = tuple(c[0] for c in combo)
            if left in out:
                del out[left]
            else:
                out[left] = 1
    return out


def top_coefficient(ring: TensorRing, spec: ZDProductSpec) -> int:
    """Coefficient of the top tensor class in a top-degree product.

    Each factor i >= 2 must land on its own top class; only that part of
    each group is kept, and the product of the survivors in factor 1 is read
    off at the top class."""
    if spec.degree != ring.top_degree:
        raise ValueError(f"spec degree {spec.degree} differs from the top degree {ring.top_degree}")
    base = ring.base
    groups = spec.groups(base.nvars)
    if spec.max_factor() > ring.s:
        raise ValueError(f"{spec} uses a factor beyond s={ring.s}")
    left = 1 << base.one_rank
    for i in range(2, ring.s + 1):
        exps = groups.get(i)
        if exps is None:
            return 0
        bits = 0
        for a in top_group_polynomial(ring, exps):
            bits ^= base.monomial_bits(a)
        left = base.mul_bits(left, bits)
        if not left:
            return 0
    return (left >> base.top_rank) & 1


def pad_with_top_factor(a: TensorElement) -> TensorElement:
    """a * prod_j z_{s+1,j}^{m+k-j} in the (s+1)-fold power."""
    if a.is_zero():
        raise ValueError("padding needs a nonzero element")
    ring = a.ring
    base = ring.base
    bigger = TensorRing(base, ring.s + 1)
    embedded = TensorElement(bigger, frozenset(t + (base.one_rank,) for t in a.terms))
    pad = ZDProductSpec.from_groups({ring.s + 1: base.top_exponents})
    return tensor_mul(embedded, evaluate_zd_product(bigger, pad))


def pad_spec(spec: ZDProductSpec, s: int, top_exponents) -> ZDProductSpec:
    """The spec counterpart of pad_with_top_factor for a product in the s-fold power."""
    return spec.times(ZDProductSpec.from_groups({s + 1: tuple(top_exponents)}))
