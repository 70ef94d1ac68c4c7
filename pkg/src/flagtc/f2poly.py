"""Multivariate polynomials over GF(2).

A monomial is a tuple of nonnegative exponents, one per generator x1..xk.
Coefficients are implicit: a polynomial is the set of monomials that occur
with coefficient 1, so addition is symmetric difference.
"""
from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

Monomial = tuple


class VariableCountError(ValueError):
    """Operands live in polynomial rings with different numbers of variables."""


class PolyParseError(ValueError):
    def __init__(self, message: str, text: str, column: int):
        super().__init__(f"{message} at column {column + 1}: {text!r}")
        self.text = text
        self.column = column


def grlex_key(mon: Monomial):
    return (sum(mon), mon)


class RawPoly:
    """Element of F2[x1, ..., xk], stored as a frozenset of exponent tuples."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Iterable[Monomial] = ()):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        acc = set()
        for t in terms:
            t = tuple(t)
            if len(t) != nvars or any(e < 0 for e in t):
                raise ValueError(f"bad monomial {t} for {nvars} variables")
            acc ^= {t}
        self.terms = frozenset(acc)
        self._hash = None

    @classmethod
    def _from_set(cls, nvars: int, terms) -> "RawPoly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = frozenset(terms)
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "RawPoly":
        return cls._from_set(nvars, ())

    @classmethod
    def one(cls, nvars: int) -> "RawPoly":
        return cls._from_set(nvars, [(0,) * nvars])

    @classmethod
    def monomial(cls, exponents) -> "RawPoly":
        exponents = tuple(exponents)
        return cls(len(exponents), [exponents])

    @classmethod
    def gen(cls, nvars: int, i: int, power: int = 1) -> "RawPoly":
        """The generator x_i (1-based) raised to `power`."""
        if not 1 <= i <= nvars:
            raise IndexError(f"generator x{i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i - 1] = power
        return cls._from_set(nvars, [tuple(e)])

    def _check(self, other: "RawPoly"):
        if not isinstance(other, RawPoly):
            return NotImplemented
        if other.nvars != self.nvars:
            raise VariableCountError(f"{self.nvars} vs {other.nvars} variables")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return RawPoly._from_set(self.nvars, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        acc = set()
        for a in self.terms:
            for b in other.terms:
                acc ^= {tuple(x + y for x, y in zip(a, b))}
        return RawPoly._from_set(self.nvars, acc)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = RawPoly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, RawPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.terms))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.sorted_terms())

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list:
        """Terms in descending graded-lex order."""
        return sorted(self.terms, key=grlex_key, reverse=True)

    def degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(t) for t in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(t) for t in self.terms}) <= 1

    def substitute_vars(self, mapping) -> "RawPoly":
        """Rename variables: variable i goes to mapping[i] (both 1-based)."""
        acc = set()
        for t in self.terms:
            e = [0] * self.nvars
            for i, a in enumerate(t):
                e[mapping[i + 1] - 1] += a
            acc ^= {tuple(e)}
        return RawPoly._from_set(self.nvars, acc)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"RawPoly({self.nvars}, {format_poly(self)!r})"


def poly_add(p: RawPoly, q: RawPoly) -> RawPoly:
    return p + q


def poly_mul(p: RawPoly, q: RawPoly) -> RawPoly:
    return p * q


def _norm_vars(nvars: int, variables) -> tuple:
    if variables is None:
        return tuple(range(1, nvars + 1))
    variables = tuple(sorted(set(variables)))
    if any(not 1 <= v <= nvars for v in variables):
        raise IndexError(f"variables {variables} out of range for {nvars} variables")
    return variables


@lru_cache(maxsize=None)
def _elementary(t: int, nvars: int, variables: tuple) -> RawPoly:
    if t == 0:
        return RawPoly.one(nvars)
    if t > len(variables):
        return RawPoly.zero(nvars)
    # e_t(S + x) = e_t(S) + x e_{t-1}(S)
    *rest, last = variables
    rest = tuple(rest)
    return _elementary(t, nvars, rest) + RawPoly.gen(nvars, last) * _elementary(t - 1, nvars, rest)


@lru_cache(maxsize=None)
def _complete(t: int, nvars: int, variables: tuple) -> RawPoly:
    if t == 0:
        return RawPoly.one(nvars)
    if not variables:
        return RawPoly.zero(nvars)
    # h_t(S + x) = h_t(S) + x h_{t-1}(S + x)
    rest = variables[:-1]
    return _complete(t, nvars, rest) + RawPoly.gen(nvars, variables[-1]) * _complete(t - 1, nvars, variables)


def elementary_symmetric(t: int, nvars: int, variables=None) -> RawPoly:
    """e_t in the given (1-based) variables of F2[x1..x_nvars]; all of them by default."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    return _elementary(t, nvars, _norm_vars(nvars, variables))


def complete_symmetric(t: int, nvars: int, variables=None) -> RawPoly:
    """h_t in the given (1-based) variables of F2[x1..x_nvars]; all of them by default."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    return _complete(t, nvars, _norm_vars(nvars, variables))


def complete_symmetric_brute(t: int, nvars: int, variables=None) -> RawPoly:
    """h_t by listing every degree-t monomial; slow, used as a cross-check."""
    variables = _norm_vars(nvars, variables)
    terms = []
    for combo in _multisets(variables, t):
        e = [0] * nvars
        for v in combo:
            e[v - 1] += 1
        terms.append(tuple(e))
    return RawPoly(nvars, terms)


def elementary_symmetric_brute(t: int, nvars: int, variables=None) -> RawPoly:
    variables = _norm_vars(nvars, variables)
    terms = []
    for combo in combinations(variables, t):
        e = [0] * nvars
        for v in combo:
            e[v - 1] = 1
        terms.append(tuple(e))
    return RawPoly(nvars, terms)


def _multisets(items, size):
    if size == 0:
        yield ()
        return
    if not items:
        return
    first, rest = items[0], items[1:]
    for n in range(size, -1, -1):
        for tail in _multisets(rest, size - n):
            yield (first,) * n + tail


def verify_eh_identity(j: int, k: int) -> bool:
    """Check sum_{t=0}^{j} e_t h_{j-t} = 0 in F2[x1..xk]."""
    if j < 1 or k < 1:
        raise ValueError("j and k must be positive")
    total = RawPoly.zero(k)
    for t in range(j + 1):
        total = total + elementary_symmetric(t, k) * complete_symmetric(j - t, k)
    return total.is_zero()


# -- text grammar ------------------------------------------------------------

def format_monomial(mon: Monomial) -> str:
    parts = []
    for i, e in enumerate(mon, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(p: RawPoly) -> str:
    if p.is_zero():
        return "0"
    return " + ".join(format_monomial(t) for t in p.sorted_terms())


_TOKEN = re.compile(r"\s*(?:(x)(\d+)|(\d+)|(\^)|(\*)|(\+)|(\()|(\)))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolyParseError("unexpected character", text, pos)
        start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
        if m.group(1):
            tokens.append(("gen", int(m.group(2)), start))
        elif m.group(3):
            tokens.append(("int", int(m.group(3)), start))
        else:
            tokens.append((m.group(0).strip(), None, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _PolyParser:
    def __init__(self, text: str, nvars):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        if nvars is None:
            gens = [v for kind, v, _ in self.tokens if kind == "gen"]
            nvars = max(gens, default=0)
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise PolyParseError(f"expected {kind!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self) -> RawPoly:
        p = self.sum()
        self.take("end")
        return p

    def sum(self) -> RawPoly:
        p = self.product()
        while self.peek()[0] == "+":
            self.take()
            p = p + self.product()
        return p

    def product(self) -> RawPoly:
        p = self.power()
        while self.peek()[0] in ("*", "gen", "(", "int"):
            if self.peek()[0] == "*":
                self.take()
            p = p * self.power()
        return p

    def power(self) -> RawPoly:
        p = self.atom()
        if self.peek()[0] == "^":
            self.take()
            _, n, _ = self.take("int")
            p = p ** n
        return p

    def atom(self) -> RawPoly:
        kind, value, col = self.peek()
        if kind == "gen":
            self.take()
            if not 1 <= value <= self.nvars:
                raise PolyParseError(f"generator x{value} out of range", self.text, col)
            return RawPoly.gen(self.nvars, value)
        if kind == "int":
            self.take()
            return RawPoly.one(self.nvars) if value % 2 else RawPoly.zero(self.nvars)
        if kind == "(":
            self.take()
            p = self.sum()
            self.take(")")
            return p
        raise PolyParseError("expected a term", self.text, col)


def parse_poly(text: str, nvars: int = None) -> RawPoly:
    """Parse e.g. ``"x1^3*x2 + x3"``. Integer literals are read mod 2."""
    return _PolyParser(text, nvars).parse()
