"""Zero-divisor cup-length bounds for TC_s of F(1^k, m) and of surfaces.

Every lower bound reported here comes from a zero-divisor product that was
evaluated and found nonzero in the actual tensor power; closed-form
certificates only propose candidates.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import islice, product

import numpy as np

from . import kernels
from .flag_ring import FlagRing, iter_bits
from .surface_ring import SurfaceRing, surface_certificate
from .tensor_ring import (
    DEFAULT_MAX_TERMS,
    ResourceLimitError,
    TensorRing,
    ZDProductSpec,
    evaluate_zd_product,
    top_group_polynomial,
    zd_product_nonzero,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_CANDIDATES = 10 ** 8


class HypothesisError(ValueError):
    """Parameters outside the range where a certificate is asserted."""


@dataclass
class TCBound:
    space: str
    s: int
    lower: int
    upper: int
    witness: str = None
    provenance: str = "closed-form"
    verified: bool = True
    citation: str = ""
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class GapValue:
    k: int
    m: int
    s: int
    value: int


def flag_dim(k: int, m: int) -> int:
    return k * m + k * (k - 1) // 2


# -- closed-form bounds and certificates --------------------------------------

def corollary_lower_bound(k: int, m: int, delta: int, e: int) -> int:
    """(k-d+eps)(2^{e+1}-1) + max(0, (d-1)(2^e-1)) - eps, eps = min(d, 1)."""
    if not 0 <= delta <= k - 1:
        raise HypothesisError(f"delta={delta} outside 0..{k - 1}")
    if e < 0 or not (2 * delta <= 2 ** e <= m + delta):
        raise HypothesisError(f"need 2*delta <= 2^e <= m + delta, got delta={delta}, e={e}, m={m}")
    eps = min(delta, 1)
    return (k - delta + eps) * (2 ** (e + 1) - 1) + max(0, (delta - 1) * (2 ** e - 1)) - eps


def admissible_pairs(k: int, m: int) -> list:
    """All (delta, e) allowed in corollary_lower_bound for F(1^k, m)."""
    pairs = []
    for delta in range(k):
        e = 0
        while 2 ** e <= m + delta:
            if 2 * delta <= 2 ** e:
                pairs.append((delta, e))
            e += 1
    return pairs


def theorem_certificate(k: int, e: int, delta: int) -> ZDProductSpec:
    """(z1..z_{k-d})^{2^{e+1}-1} z_{k-d+1}^{2^{e+1}-2} (z_{k-d+2}..z_k)^{2^e-1}
    in H*(F(1^k, 2^e - d))^{(x)2}."""
    if not (0 <= delta < k) or 2 ** e - delta < 1 or 2 ** e < 2 * delta:
        raise HypothesisError(f"certificate needs k > delta >= 0, 2^(e-1) >= delta, m >= 1 "
                              f"(k={k}, e={e}, delta={delta})")
    exps = [2 ** (e + 1) - 1] * (k - delta)
    if delta >= 1:
        exps.append(2 ** (e + 1) - 2)
        exps += [2 ** e - 1] * (delta - 1)
    return ZDProductSpec.from_groups({2: tuple(exps)})


def certificate_space(k: int, e: int, delta: int) -> tuple:
    return (k, 2 ** e - delta)


HIGHER_FAMILIES = ("stable", "f11-power", "f112")


def higher_certificate(k: int, e: int, s: int, family: str = "stable") -> ZDProductSpec:
    """Zero-divisor products of full or near-full degree in the s-fold power.

    family="stable": k in {1, 2, 3} on F(1^k, 2^e - k + 1);
    family="f11-power": F(1,1,2^e), e >= 2 (k must be 2);
    family="f112": F(1,1,2) (k = 2, e = 1).
    """
    if s < 3:
        raise HypothesisError("higher certificates need s >= 3")
    E, E2 = 2 ** e, 2 ** (e + 1)
    if family == "stable":
        if k == 1 and e >= 1:
            groups = {2: (E2 - 1,), 3: (E + 1,)}
            groups.update({i: (E,) for i in range(4, s + 1)})
        elif k == 2 and e >= 1:
            groups = {2: (E2 - 1, E2 - 2), 3: (E - 1, E + 1)}
            groups.update({i: (E, E - 1) for i in range(4, s + 1)})
        elif k == 3 and e >= 2:
            groups = {2: (E2 - 1, E2 - 2, E - 1), 3: (E - 1, E - 1, E2 - 3)}
            groups.update({i: (E, E - 1, E - 2) for i in range(4, s + 1)})
        else:
            raise HypothesisError(f"no certificate for k={k}, e={e}")
    elif family == "f11-power":
        if k != 2 or e < 2:
            raise HypothesisError("the F(1,1,2^e) certificate needs k=2, e>=2")
        groups = {2: (E2 - 1, E2 - 1), 3: (E + 1, E + 3)}
        groups.update({i: (E + 1, E) for i in range(4, s + 1)})
    elif family == "f112":
        if k != 2:
            raise HypothesisError("the F(1,1,2) certificate needs k=2")
        groups = {2: (3, 3), 3: (3, 3)}
        groups.update({i: (3, 2) for i in range(4, s + 1)})
    else:
        raise ValueError(f"unknown family {family!r}")
    return ZDProductSpec.from_groups(groups)


def higher_certificate_space(k: int, e: int, family: str = "stable") -> tuple:
    if family == "stable":
        return (k, 2 ** e - k + 1)
    if family == "f11-power":
        return (2, 2 ** e)
    if family == "f112":
        return (2, 2)
    raise ValueError(f"unknown family {family!r}")


# Witnesses found by computer search rather than by a closed formula:
# (k, minimal m, s) -> factor groups.
KNOWN_WITNESSES = {
    (4, 1, 2): [{2: (7, 6, 3, 2)}],
    (4, 1, 3): [{2: (7, 6, 3, 2), 3: (1, 3, 5, 3)}],
    (4, 5, 4): [{2: (15, 14, 7, 6), 3: (7, 7, 7, 14), 4: (5, 7, 7, 8)}],
}


# -- exponent pruning ----------------------------------------------------------

def exponent_cap(base) -> int:
    """Largest exponent n for which z_{i,j}^n can be nonzero.

    Both summands of (x_{1,j} + x_{i,j})^n need exponents <= height, so
    n <= 2*height; when height + 1 <= 2^{e+1}, z^{2^{e+1}} = x^{2^{e+1}} + x^{2^{e+1}} = 0."""
    h = base.height
    cap = 2 * h
    p = 1
    while p < h + 1:
        p *= 2
    return min(cap, p - 1)


# -- exhaustive search ---------------------------------------------------------

def count_compositions(total: int, caps) -> int:
    ways = [1] + [0] * total
    for c in caps:
        nxt = [0] * (total + 1)
        for t in range(total + 1):
            if ways[t]:
                for x in range(min(c, total - t) + 1):
                    nxt[t + x] += ways[t]
        ways = nxt
    return ways[total]


def compositions(total: int, caps):
    """Tuples x with 0 <= x_i <= caps[i] and sum total, in colexicographic order."""
    n = len(caps)
    if n == 0:
        if total == 0:
            yield ()
        return
    suffix_max = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_max[i] = suffix_max[i + 1] + caps[i]

    def rec(i, remaining):
        # fill from the last coordinate so that the output is colex ordered
        if i < 0:
            if remaining == 0:
                yield ()
            return
        head_max = suffix_max[0] - suffix_max[i]
        lo = max(0, remaining - head_max)
        for x in range(lo, min(caps[i], remaining) + 1):
            for head in rec(i - 1, remaining - x):
                yield head + (x,)

    yield from rec(n - 1, total)


def top_table(base) -> np.ndarray:
    """Top coefficients over the box [0, height]^nvars, flat row-major."""
    if isinstance(base, FlagRing):
        return base.top_table()
    h = base.height
    table = np.zeros((h + 1) ** base.nvars, dtype=np.uint8)
    for v in product(range(h + 1), repeat=base.nvars):
        if sum(v) == base.dim and base.top_coefficient_of_monomial(v):
            idx = 0
            for x in v:
                idx = idx * (h + 1) + x
            table[idx] = 1
    return table


class _SearchContext:
    def __init__(self, base, s, prefix, free, target, prune, max_terms):
        self.base = base
        self.ring = TensorRing(base, s)
        self.s = s
        self.prefix = prefix
        self.free = list(free)
        self.target = target
        self.max_terms = max_terms
        self.fast = target == self.ring.top_degree and hasattr(base, "top_coefficient_of_monomial")
        self.h = base.height
        if self.fast:
            self.ctab = top_table(base)
            self._lefts = {}
            self._bits = {}

    def spec_for(self, values) -> ZDProductSpec:
        return self.prefix.times(ZDProductSpec(tuple((i, j, n) for (i, j), n in zip(self.free, values))))

    def slow(self, candidates) -> list:
        return [c for c in candidates if zd_product_nonzero(self.ring, self.spec_for(c))]

    def _group_bits(self, i, exps) -> int:
        key = (i, exps)
        out = self._bits.get(key)
        if out is None:
            out = 0
            for a in top_group_polynomial(self.ring, exps):
                out ^= self.base.monomial_bits(a)
            self._bits[key] = out
        return out

    def fast_eval(self, candidates) -> list:
        base = self.base
        nv = base.nvars
        last = max(i for i, _ in self.free)
        found = []
        batches = {}
        for c in candidates:
            groups = self.spec_for(c).groups(nv)
            if any(i not in groups for i in range(2, self.s + 1)):
                continue
            rest = tuple(sorted((i, g) for i, g in groups.items() if i != last))
            batches.setdefault(rest, []).append((c, groups[last]))
        hb = self.h + 1
        for rest, items in batches.items():
            p = 1 << base.one_rank
            for i, exps in rest:
                p = base.mul_bits(p, self._group_bits(i, exps))
                if not p:
                    break
            if not p:
                continue
            ttab = np.zeros(hb ** nv, dtype=np.uint8)
            need = {sum(n) - base.dim for _, n in items}
            for a in product(range(hb), repeat=nv):
                if sum(a) not in need:
                    continue
                # coefficient of the top class in p * x^a
                acc = 0
                for r in iter_bits(p):
                    idx = 0
                    ok = True
                    for x, y in zip(base.basis[r], a):
                        if x + y > self.h:
                            ok = False
                            break
                        idx = idx * hb + x + y
                    if ok:
                        acc ^= int(self.ctab[idx])
                if acc:
                    idx = 0
                    for x in a:
                        idx = idx * hb + x
                    ttab[idx] = 1
            cands = np.array([n for _, n in items], dtype=np.int64).reshape(len(items), nv)
            hits = kernels.top_pairing_batch(cands, self.ctab, ttab, self.h, base.dim)
            found.extend(c for (c, _), hit in zip(items, hits) if hit)
        return found

    def run(self, candidates) -> list:
        if self.fast:
            return self.fast_eval(candidates)
        return self.slow(candidates)


_WORKER = {}


def _worker_init(base, s, prefix, free, target, prune, max_terms):
    _WORKER["ctx"] = _SearchContext(base, s, prefix, free, target, prune, max_terms)


def _worker_run(chunk):
    return _WORKER["ctx"].run(chunk)


def exhaustive_search(space, s: int, prefix: ZDProductSpec, free_factors, target_degree: int,
                      exponent_caps=None, prune: bool = True, workers: int = 1,
                      max_candidates: int = DEFAULT_MAX_CANDIDATES,
                      max_terms: int = DEFAULT_MAX_TERMS, store=None, chunk_size: int = 20000) -> list:
    """Every exponent assignment to `free_factors` making prefix * free a
    nonzero product of total degree `target_degree`, in lexicographic order.

    With prune=True, exponents beyond exponent_cap(space) are not tried
    (those zero-divisor powers vanish); prune=False tries every exponent up
    to the remaining degree.  A resource ceiling on the number of candidates
    raises ResourceLimitError and no partial result is returned.
    """
    base = space
    ring = TensorRing(base, s)
    free_factors = [tuple(f) for f in free_factors]
    for i, j in free_factors:
        if not (2 <= i <= s and 1 <= j <= base.nvars):
            raise ValueError(f"free factor z[{i},{j}] out of range")
    if len(set(free_factors)) != len(free_factors):
        raise ValueError("free factors repeat")
    if target_degree > ring.top_degree:
        raise ValueError(f"target degree {target_degree} exceeds the top degree {ring.top_degree}")
    remaining = target_degree - prefix.degree
    if remaining < 0:
        return []
    if exponent_caps is None:
        cap = exponent_cap(base) if prune else remaining
        caps = [cap] * len(free_factors)
    elif isinstance(exponent_caps, int):
        caps = [exponent_caps] * len(free_factors)
    else:
        caps = list(exponent_caps)
    if prune:
        hard = exponent_cap(base)
        fixed = {(i, j): n for i, j, n in prefix.factors}
        caps = [max(0, min(c, hard - fixed.get(f, 0))) for c, f in zip(caps, free_factors)]
        if any(n > hard for n in fixed.values()):
            return []
    total = count_compositions(remaining, caps)
    if total > max_candidates:
        raise ResourceLimitError(f"{total} candidates exceed the ceiling {max_candidates}")
    log.info("searching %d candidates in %s^%d", total, getattr(base, "name", base), s)
    stream = compositions(remaining, caps)
    chunks = iter(lambda: list(islice(stream, chunk_size)), [])
    if workers > 1 and total > chunk_size:
        with ProcessPoolExecutor(max_workers=workers, initializer=_worker_init,
                                 initargs=(base, s, prefix, free_factors, target_degree, prune,
                                           max_terms)) as pool:
            found = [c for part in pool.map(_worker_run, chunks) for c in part]
    else:
        ctx = _SearchContext(base, s, prefix, free_factors, target_degree, prune, max_terms)
        found = [c for chunk in chunks for c in ctx.run(chunk)]
    found.sort()
    results = [prefix.times(ZDProductSpec(tuple((i, j, n) for (i, j), n in zip(free_factors, c))))
               for c in found]
    if store is not None:
        for spec in results:
            store.record(base.name, s, str(spec), True, spec.degree)
    return results


def search_free_values(results, free_factors) -> list:
    """Exponents of the free factors in each search result."""
    out = []
    for spec in results:
        table = {(i, j): n for i, j, n in spec.factors}
        out.append(tuple(table.get(f, 0) for f in free_factors))
    return out


# -- sharpness -----------------------------------------------------------------

def sharpness_check(k: int, e: int, max_terms: int = DEFAULT_MAX_TERMS) -> bool:
    """True iff (z1..zk)^{2^{e+1}-1} = 0 in H*(F(1^k, 2^e - 1))^{(x)2}."""
    if not 2 <= k <= 2 ** e + 1:
        raise HypothesisError(f"need 2 <= k <= 2^e + 1 (k={k}, e={e})")
    ring = TensorRing(FlagRing(k, 2 ** e - 1), 2)
    spec = ZDProductSpec.from_groups({2: (2 ** (e + 1) - 1,) * k})
    return evaluate_zd_product(ring, spec, max_terms=max_terms).is_zero()


def delta_one_expansion(k: int, e: int, max_terms: int = DEFAULT_MAX_TERMS):
    """(z1..z_{k-1})^{2^{e+1}-1} z_k^{2^{e+1}-2} in H*(F(1^k, 2^e - 1))^{(x)2}."""
    ring = TensorRing(FlagRing(k, 2 ** e - 1), 2)
    return evaluate_zd_product(ring, theorem_certificate(k, e, 1), max_terms=max_terms)


# -- reports -------------------------------------------------------------------

@dataclass
class _Candidate:
    spec: ZDProductSpec
    provenance: str
    citation: str


def _flag_candidates(base: FlagRing, s: int) -> list:
    k, m = base.k, base.m
    cands = []
    if s == 2:
        for delta, e in admissible_pairs(k, m):
            spec = theorem_certificate(k, e, delta)
            cands.append(_Candidate(spec, "closed-form", f"zcl certificate delta={delta}, e={e}"))
    else:
        for family in HIGHER_FAMILIES:
            e = 1
            while True:
                try:
                    kk, mm = higher_certificate_space(k, e, family)
                except ValueError:
                    break
                if mm > m or e > 40:
                    break
                if kk == k and mm >= 1:
                    try:
                        spec = higher_certificate(k, e, s, family)
                        cands.append(_Candidate(spec, "closed-form", f"{family} certificate e={e}"))
                    except HypothesisError:
                        pass
                if family == "f112":
                    break
                e += 1
    for (kk, m_min, ss), witnesses in KNOWN_WITNESSES.items():
        if kk == k and ss == s and m >= m_min:
            for groups in witnesses:
                cands.append(_Candidate(ZDProductSpec.from_groups(groups), "known-witness",
                                        "computer-found witness"))
    return cands


def _verify(ring: TensorRing, spec: ZDProductSpec, max_terms: int, store=None):
    """True/False when decided, None when over the resource ceiling."""
    if store is not None:
        hit = store.lookup(ring.base.name, ring.s, str(spec))
        if hit is not None:
            return hit["nonzero"]
    try:
        nz = zd_product_nonzero(ring, spec)
    except (ResourceLimitError, MemoryError):
        return None
    if store is not None:
        store.record(ring.base.name, ring.s, str(spec), nz, spec.degree)
    return nz


def tc_report(space, s: int, witnesses=(), store=None, max_terms: int = DEFAULT_MAX_TERMS,
              _memo=None) -> TCBound:
    """Certified interval for TC_s(space): verified zcl below, s*dim above."""
    if s < 2:
        raise ValueError("s must be at least 2")
    _memo = {} if _memo is None else _memo
    key = (space.name, s)
    if key in _memo:
        return _memo[key]
    base = space
    ring = TensorRing(base, s)
    upper = s * base.dim
    symbol = "c" if isinstance(base, SurfaceRing) else "z"

    if isinstance(base, SurfaceRing):
        cands = []
        if s >= 3:
            cands.append(_Candidate(surface_certificate(s), "closed-form", "surface certificate"))
        else:
            for d in range(upper, 0, -1):
                found = exhaustive_search(base, 2, ZDProductSpec(), [(2, j) for j in range(1, base.n + 1)], d)
                if found:
                    cands.append(_Candidate(found[0], "search", "exhaustive search"))
                    break
    else:
        cands = _flag_candidates(base, s)
    for text in witnesses:
        spec = text if isinstance(text, ZDProductSpec) else _parse(text)
        cands.append(_Candidate(spec, "user", "user-supplied witness"))
    if store is not None:
        from .grammar import parse_zd_spec

        for rec in store.witnesses(base.name, s):
            cands.append(_Candidate(parse_zd_spec(rec["spec"]), "cache", "result store"))
    if s >= 3 and hasattr(base, "top_exponents") and isinstance(base, FlagRing):
        prev = tc_report(base, s - 1, store=store, max_terms=max_terms, _memo=_memo)
        if prev.witness:
            from .tensor_ring import pad_spec

            cands.append(_Candidate(pad_spec(_parse(prev.witness), s - 1, base.top_exponents),
                                    "padding", f"padded TC_{s - 1} witness"))

    cands = [c for c in cands if c.spec.max_factor() <= s and c.spec.degree <= upper]
    cands.sort(key=lambda c: -c.spec.degree)
    notes = []
    best = None
    for cand in cands:
        nz = _verify(ring, cand.spec, max_terms, store)
        if nz is None:
            notes.append(f"unverified (resource ceiling): {cand.spec.format(symbol)} [{cand.citation}]")
            continue
        if nz:
            best = cand
            break
        notes.append(f"vanishes: {cand.spec.format(symbol)} [{cand.citation}]")
    if best is None:
        report = TCBound(base.name, s, 0, upper, None, "none", True, "", notes)
    else:
        report = TCBound(base.name, s, best.spec.degree, upper, best.spec.format(symbol),
                         best.provenance, True, best.citation, notes)
    _memo[key] = report
    return report


def _parse(text):
    from .grammar import parse_zd_spec

    return parse_zd_spec(text)


def gap_sequence(k: int, m: int, s_max: int, max_terms: int = DEFAULT_MAX_TERMS, store=None) -> list:
    """G(k, m, s) = s*dim - best verified zcl_s, for s = 2..s_max."""
    if s_max < 2:
        raise ValueError("s_max must be at least 2")
    base = FlagRing(k, m)
    memo = {}
    out = []
    for s in range(2, s_max + 1):
        rep = tc_report(base, s, store=store, max_terms=max_terms, _memo=memo)
        out.append(GapValue(k, m, s, rep.upper - rep.lower))
    for a, b in zip(out, out[1:]):
        if b.value > a.value:
            raise AssertionError(f"gap increased from s={a.s} to s={b.s}: {a.value} -> {b.value}")
    return out
