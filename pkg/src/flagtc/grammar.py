"""Parsing and printing of manifold names and zero-divisor expressions.

Manifolds:  F(1^k,m), F(1^k) (= F(1^k,1)), F(1,1,...,1,m), F_n (the
complete flag of n lines, F(1^{n-1},1)) and N(n) for non-orientable surfaces.

Products:  z[i,j]^n factors joined by '*', with grouped powers such as
(z1*z2*z3)^7.  A bare zj abbreviates z[2,j]; c[i,j] is accepted as the
surface spelling of z[i,j].
"""
from __future__ import annotations

import re

from .flag_ring import FlagRing
from .surface_ring import SurfaceRing
from .tensor_ring import ZDProductSpec


class SpecSyntaxError(ValueError):
    def __init__(self, message: str, text: str, column: int):
        super().__init__(f"{message} at line 1, column {column + 1}: {text!r}")
        self.text = text
        self.column = column


_FLAG_POWER = re.compile(r"^F\(\s*1\s*\^\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)$")
_FLAG_LIST = re.compile(r"^F\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)$")
_COMPLETE = re.compile(r"^F_?(\d+)$")
_SURFACE = re.compile(r"^N\(\s*(\d+)\s*\)$")


def parse_space(text: str):
    """Return a FlagRing or SurfaceRing for a manifold name."""
    t = text.strip()
    m = _FLAG_POWER.match(t)
    if m:
        k = int(m.group(1))
        mm = int(m.group(2)) if m.group(2) is not None else 1
        return FlagRing(k, mm)
    m = _FLAG_LIST.match(t)
    if m:
        parts = [int(p) for p in m.group(1).split(",")]
        if len(parts) < 2 or any(p != 1 for p in parts[:-1]):
            raise SpecSyntaxError("only F(1,...,1,m) is supported", text, 0)
        return FlagRing(len(parts) - 1, parts[-1])
    m = _COMPLETE.match(t)
    if m and int(m.group(1)) >= 2:
        return FlagRing(int(m.group(1)) - 1, 1)
    m = _SURFACE.match(t)
    if m:
        return SurfaceRing(int(m.group(1)))
    raise SpecSyntaxError("unknown manifold", text, 0)


def format_space(ring) -> str:
    return ring.name


_TOK = re.compile(r"(?P<zd>[zc])\[\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\]|(?P<short>[zc])(?P<sj>\d+)"
                  r"|(?P<num>\d+)|(?P<op>[\^*()])")


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOK.match(text, pos)
        if not m:
            raise SpecSyntaxError("unexpected character", text, pos)
        if m.group("zd"):
            out.append(("zd", (int(m.group("i")), int(m.group("j"))), pos))
        elif m.group("short"):
            out.append(("zd", (2, int(m.group("sj"))), pos))
        elif m.group("num"):
            out.append(("num", int(m.group("num")), pos))
        else:
            out.append((m.group("op"), None, pos))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _SpecParser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind):
        tok = self.toks[self.i]
        if tok[0] != kind:
            raise SpecSyntaxError(f"expected {kind!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self):
        factors = self.product()
        self.take("end")
        return factors

    def product(self):
        factors = self.power()
        while self.peek()[0] in ("*", "zd", "("):
            if self.peek()[0] == "*":
                self.i += 1
            factors = factors + self.power()
        return factors

    def power(self):
        factors = self.atom()
        if self.peek()[0] == "^":
            self.i += 1
            _, n, _ = self.take("num")
            factors = [(i, j, e * n) for i, j, e in factors]
        return factors

    def atom(self):
        kind, value, col = self.peek()
        if kind == "zd":
            self.i += 1
            i, j = value
            if i < 2:
                raise SpecSyntaxError("zero-divisor factor index must be >= 2", self.text, col)
            if j < 1:
                raise SpecSyntaxError("generator index must be >= 1", self.text, col)
            return [(i, j, 1)]
        if kind == "num" and value == 1:
            self.i += 1
            return []
        if kind == "(":
            self.i += 1
            inner = self.product()
            self.take(")")
            return inner
        raise SpecSyntaxError("expected a zero-divisor", self.text, col)


def parse_zd_spec(text: str) -> ZDProductSpec:
    return ZDProductSpec(tuple(_SpecParser(text).parse()))


def format_zd_spec(spec: ZDProductSpec, ring=None) -> str:
    return spec.format("c" if isinstance(ring, SurfaceRing) else "z")


def parse_free_factors(text: str) -> list:
    """'z[3,1],z[3,2]' -> [(3, 1), (3, 2)]."""
    out = []
    pos = 0
    item = re.compile(r"\s*[zc]\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*(,|$)")
    while pos < len(text):
        m = item.match(text, pos)
        if not m:
            raise SpecSyntaxError("expected z[i,j]", text, pos)
        out.append((int(m.group(1)), int(m.group(2))))
        pos = m.end()
    if not out:
        raise SpecSyntaxError("no free factors given", text, 0)
    return out


def format_free_factors(free) -> str:
    return ",".join(f"z[{i},{j}]" for i, j in free)
