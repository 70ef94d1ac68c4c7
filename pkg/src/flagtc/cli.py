"""Command-line front end.  Every command prints one JSON document.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
ceiling exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import kernels
from .f2poly import PolyParseError, VariableCountError, format_monomial, format_poly, parse_poly
from .flag_ring import FlagRing, iter_bits, normal_form, poincare_polynomial, verify_ring
from .grammar import SpecSyntaxError, format_free_factors, parse_free_factors, parse_space, parse_zd_spec
from .store import ResultStore
from .surface_ring import SurfaceRing
from .tensor_ring import DEFAULT_MAX_TERMS, ResourceLimitError, TensorRing, evaluate_zd_product, zd_product_nonzero
from .zcl_engine import (
    DEFAULT_MAX_CANDIDATES,
    HypothesisError,
    exhaustive_search,
    gap_sequence,
    sharpness_check,
    tc_report,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

COMMANDS = ("basis", "reduce", "verify-ring", "zdp", "search", "sharpness", "tc-report", "gap",
            "verify-paper")

CONFIG_KEYS = {"max_terms", "max_candidates", "workers", "store"}


class UsageError(Exception):
    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ring_label(ring):
    return ring.name


def _basis_names(ring):
    if isinstance(ring, SurfaceRing):
        return [ring.format_rank(r) for r in range(ring.size)]
    return [format_monomial(v) for v in ring.basis]


def cmd_basis(args, cfg):
    ring = _space(args)
    if isinstance(ring, SurfaceRing):
        poincare = [1, ring.n, 1]
    else:
        poincare = poincare_polynomial(ring)
    return {"command": "basis", "space": ring.name, "dim": ring.dim, "size": ring.size,
            "basis": _basis_names(ring), "degrees": list(ring.basis_degree),
            "poincare": poincare}, EXIT_OK


def cmd_reduce(args, cfg):
    ring = _space(args)
    if not isinstance(ring, FlagRing):
        raise UsageError("reduce works on flag manifolds")
    expr = _need(args, "expr")
    try:
        p = parse_poly(expr, ring.nvars)
    except PolyParseError as exc:
        raise UsageError(str(exc), 1, exc.column + 1)
    except VariableCountError as exc:
        raise UsageError(str(exc))
    nf = normal_form(ring, p)
    terms = [format_monomial(ring.basis[r]) for r in sorted(iter_bits(nf.bits), reverse=True)]
    return {"command": "reduce", "space": ring.name, "input": format_poly(p),
            "normal_form": str(nf), "terms": terms, "zero": nf.is_zero()}, EXIT_OK


def cmd_verify_ring(args, cfg):
    ring = _space(args)
    if not isinstance(ring, FlagRing):
        raise UsageError("verify-ring works on flag manifolds")
    reports = verify_ring(ring)
    ok = all(r.passed for r in reports)
    return {"command": "verify-ring", "space": ring.name, "passed": ok,
            "reports": [r.as_dict() for r in reports]}, EXIT_OK if ok else EXIT_FAIL


def _zd_spec(text):
    try:
        return parse_zd_spec(text)
    except SpecSyntaxError as exc:
        raise UsageError(str(exc), 1, exc.column + 1)


def cmd_zdp(args, cfg):
    ring = _space(args)
    s = _need(args, "s")
    spec = _zd_spec(_need(args, "expr"))
    tensor = _tensor(ring, s, spec)
    symbol = "c" if isinstance(ring, SurfaceRing) else "z"
    out = {"command": "zdp", "space": ring.name, "s": s, "spec": spec.format(symbol),
           "degree": spec.degree, "top_degree": tensor.top_degree}
    if args.dump_terms:
        value = evaluate_zd_product(tensor, spec, max_terms=cfg["max_terms"])
        out["nonzero"] = not value.is_zero()
        out["terms"] = [value.format_term(t) for t in value.sorted_terms()]
    else:
        out["nonzero"] = zd_product_nonzero(tensor, spec)
    store = _store(cfg)
    if store is not None:
        store.record(ring.name, s, spec.format(symbol), out["nonzero"], spec.degree)
    return out, EXIT_OK


def _tensor(ring, s, spec):
    if s < 2:
        raise UsageError("--s must be at least 2")
    if spec.max_factor() > s:
        raise UsageError(f"the expression uses tensor factor {spec.max_factor()} but s={s}")
    if any(j > ring.nvars for _, j, _ in spec.factors):
        raise UsageError(f"{ring.name} has only {ring.nvars} generators")
    return TensorRing(ring, s)


def cmd_search(args, cfg):
    ring = _space(args)
    s = _need(args, "s")
    prefix = _zd_spec(args.prefix or "1")
    _tensor(ring, s, prefix)
    try:
        free = parse_free_factors(_need(args, "free"))
    except SpecSyntaxError as exc:
        raise UsageError(str(exc), 1, exc.column + 1)
    degree = _need(args, "degree")
    try:
        found = exhaustive_search(ring, s, prefix, free, degree, exponent_caps=args.cap,
                                  prune=not args.no_prune, workers=cfg["workers"],
                                  max_candidates=cfg["max_candidates"], max_terms=cfg["max_terms"],
                                  store=_store(cfg))
    except ValueError as exc:
        raise UsageError(str(exc))
    symbol = "c" if isinstance(ring, SurfaceRing) else "z"
    return {"command": "search", "space": ring.name, "s": s, "prefix": prefix.format(symbol),
            "free": format_free_factors(free), "degree": degree, "count": len(found),
            "solutions": [f.format(symbol) for f in found]}, EXIT_OK


def cmd_sharpness(args, cfg):
    k, e = _need(args, "k"), _need(args, "e")
    try:
        vanishes = sharpness_check(k, e, max_terms=cfg["max_terms"])
    except HypothesisError as exc:
        raise UsageError(str(exc))
    return {"command": "sharpness", "k": k, "e": e, "space": FlagRing(k, 2 ** e - 1).name,
            "vanishes": vanishes}, EXIT_OK


def cmd_tc_report(args, cfg):
    ring = _space(args)
    s = _need(args, "s")
    if s < 2:
        raise UsageError("--s must be at least 2")
    witnesses = [_zd_spec(w) for w in (args.witness or [])]
    rep = tc_report(ring, s, witnesses=witnesses, store=_store(cfg), max_terms=cfg["max_terms"])
    return {"command": "tc-report", **rep.as_dict()}, EXIT_OK


def cmd_gap(args, cfg):
    ring = _space(args)
    if not isinstance(ring, FlagRing):
        raise UsageError("gap works on flag manifolds")
    s_max = _need(args, "s")
    if s_max < 2:
        raise UsageError("--s must be at least 2")
    seq = gap_sequence(ring.k, ring.m, s_max, max_terms=cfg["max_terms"], store=_store(cfg))
    return {"command": "gap", "space": ring.name, "k": ring.k, "m": ring.m,
            "gaps": [{"s": g.s, "gap": g.value} for g in seq]}, EXIT_OK


def cmd_verify_paper(args, cfg):
    from .verify_paper import verify_paper

    items = verify_paper(include_long=args.include_long)
    ok = all(it.passed for it in items)
    return {"command": "verify-paper", "passed": ok, "include_long": args.include_long,
            "backend": kernels.BACKEND, "items": [it.as_dict() for it in items]}, \
        EXIT_OK if ok else EXIT_FAIL


HANDLERS = {
    "basis": cmd_basis, "reduce": cmd_reduce, "verify-ring": cmd_verify_ring, "zdp": cmd_zdp,
    "search": cmd_search, "sharpness": cmd_sharpness, "tc-report": cmd_tc_report, "gap": cmd_gap,
    "verify-paper": cmd_verify_paper,
}


def _need(args, name):
    value = getattr(args, name, None)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required")
    return value


def _space(args):
    try:
        return parse_space(_need(args, "space"))
    except SpecSyntaxError as exc:
        raise UsageError(str(exc), 1, exc.column + 1)
    except ValueError as exc:
        raise UsageError(str(exc))


def _store(cfg):
    return ResultStore(cfg["store"]) if cfg.get("store") else None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--space", help='manifold, e.g. "F(1^3,6)", "F(1,1,3)", "F5" or "N(2)"')
    common.add_argument("--s", type=int, help="number of tensor factors (s_max for gap)")
    common.add_argument("--pretty", action="store_true", help="render the JSON as an indented table")
    common.add_argument("--config", help="JSON file with max_terms, max_candidates, workers, store")
    common.add_argument("--workers", type=int)
    common.add_argument("--max-terms", type=int, help="ceiling on expanded tensor terms")
    common.add_argument("--max-candidates", type=int, help="ceiling on search candidates")
    common.add_argument("--store", help="JSON-lines result store")
    common.add_argument("--seed", type=int, help="accepted for reproducible scripts; has no effect")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="flagtc", description="Zero-divisor cup-length and TC_s bounds "
                                                "for flag manifolds and surfaces.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.add_parser("basis", parents=[common], help="additive basis and Poincare series")
    p = sub.add_parser("reduce", parents=[common], help="normal form of a polynomial in x1..xk")
    p.add_argument("--expr")
    sub.add_parser("verify-ring", parents=[common], help="check the ring relations")
    p = sub.add_parser("zdp", parents=[common], help="evaluate a zero-divisor product")
    p.add_argument("--expr")
    p.add_argument("--dump-terms", action="store_true")
    p = sub.add_parser("search", parents=[common], help="exhaustive search for nonzero products")
    p.add_argument("--prefix")
    p.add_argument("--free", help='free factors, e.g. "z[3,1],z[3,2]"')
    p.add_argument("--degree", type=int, help="target total degree")
    p.add_argument("--cap", type=int, help="largest exponent tried per free factor")
    p.add_argument("--no-prune", action="store_true")
    p = sub.add_parser("sharpness", parents=[common], help="check (z1..zk)^(2^(e+1)-1) = 0")
    p.add_argument("--k", type=int)
    p.add_argument("--e", type=int)
    p = sub.add_parser("tc-report", parents=[common], help="certified TC_s interval")
    p.add_argument("--witness", action="append", help="extra zero-divisor product to try")
    sub.add_parser("gap", parents=[common], help="gap s*dim - zcl_s for s = 2..S")
    p = sub.add_parser("verify-paper", parents=[common], help="run the reproduction suite")
    p.add_argument("--include-long", action="store_true")
    return parser


def load_config(args) -> dict:
    cfg = {"max_terms": DEFAULT_MAX_TERMS, "max_candidates": DEFAULT_MAX_CANDIDATES,
           "workers": 1, "store": None}
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}")
        unknown = set(data) - CONFIG_KEYS
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(data)
    for key in ("max_terms", "max_candidates", "workers", "store"):
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    return cfg


def render_pretty(doc, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for key, value in doc.items():
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.append(render_pretty(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(value)}")
    elif isinstance(doc, list):
        for value in doc:
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(render_pretty(value, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(value) if not isinstance(value, str) else value}")
    else:
        lines.append(f"{pad}{json.dumps(doc)}")
    return "\n".join(lines)


def run(argv=None):
    """Returns (document, exit code) without printing."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(f"a command is required: {', '.join(COMMANDS)}")
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        cfg = load_config(args)
        return HANDLERS[args.command](args, cfg)
    except UsageError as exc:
        doc = {"error": "usage", "message": str(exc)}
        if exc.line is not None:
            doc["line"], doc["column"] = exc.line, exc.column
        return doc, EXIT_USAGE
    except ResourceLimitError as exc:
        return {"error": "resource", "message": str(exc)}, EXIT_RESOURCE


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    doc, code = run(argv)
    if "--pretty" in argv:
        print(render_pretty(doc))
    else:
        print(json.dumps(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
