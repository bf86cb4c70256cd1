"""Command-line front end: scheme descriptors in, exact JSON reports out."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import CATALOG, pg_scan, parse_descriptor
from .designs import (
    SubsetDesign,
    constrain_design,
    eigenspace_support,
    inner_distribution,
    mac_williams,
    support_from_design_indices,
)
from .errors import CHECK_FAILED, MATH_DOMAIN, PARSE, ParseError, SchemeForgeError
from .exactnum import parse_scalar
from .linalg import ExactMatrix, RelationMatrix
from .reproduce import CHECKS, run_check
from .scheme import (
    Scheme,
    find_cometric_orderings,
    find_metric_orderings,
    is_Q_antipodal,
    is_Q_bipartite,
    krein_array,
    vanishing_krein,
)

EXIT_CODES = {PARSE: 2, MATH_DOMAIN: 3, CHECK_FAILED: 4}


def _strs(v):
    return [str(x) for x in v]


def load_descriptor(text: str) -> Scheme:
    """Accept a JSON descriptor, a path to one, ``-`` for stdin, or a bare ``name:params``."""
    if text == "-":
        text = sys.stdin.read()
    elif not text.lstrip().startswith("{") and os.path.isfile(text):
        with open(text) as fh:
            text = fh.read()
    if not text.lstrip().startswith("{"):
        return parse_descriptor(text)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    keys = [k for k in ("catalog", "relations", "P", "intersection_array") if k in obj]
    if len(keys) != 1:
        raise ParseError("descriptor needs exactly one of catalog, relations, P, intersection_array")
    key = keys[0]
    try:
        if key == "catalog":
            return parse_descriptor(obj["catalog"])
        if key == "relations":
            rels = [RelationMatrix.from_hex(rows) for rows in obj["relations"]]
            return Scheme.from_relations(rels, name=obj.get("name", ""))
        if key == "P":
            sch = Scheme.from_eigenmatrix(ExactMatrix([[parse_scalar(str(x)) for x in row] for row in obj["P"]]),
                                          name=obj.get("name", ""))
            sch.spectral  # validate eagerly so shape errors surface as parse errors
            return sch
        ia = obj["intersection_array"]
        return Scheme.from_intersection_array(ia["b"], ia["c"], name=obj.get("name", ""))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed {key} descriptor: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, SchemeForgeError):
            raise
        raise ParseError(f"malformed {key} descriptor: {exc}") from exc


def _approx(values):
    return [round(float(x), 10) for x in values]


def spectral_report(sch: Scheme, approx: bool = False) -> dict:
    sp = sch.spectral
    rep = {
        "name": sch.name,
        "n": sp.n,
        "d": sp.d,
        "k": _strs(sp.k),
        "m": _strs(sp.m),
        "P": sp.P.to_strings(),
        "Q": sp.Q.to_strings(),
        "flags": {k: v for k, v in sp.flags.items() if k != "intersection_array"},
    }
    if sch.meta:
        rep["meta"] = {k: v for k, v in sch.meta.items() if isinstance(v, (int, str, bool, list, dict))}
    if approx:
        rep["approx"] = {"m": _approx(sp.m), "P": [_approx(sp.P.row(r)) for r in range(sp.d + 1)],
                         "Q": [_approx(sp.Q.row(r)) for r in range(sp.d + 1)]}
    return rep


def _orderings(sch: Scheme) -> dict:
    if sch.d > 8:
        return {"cometric": None, "metric": None}
    return {"cometric": [list(o) for o in find_cometric_orderings(sch.krein)],
            "metric": [list(o) for o in find_metric_orderings(sch.intersection)]}


def cmd_info(sch: Scheme, approx: bool = False) -> dict:
    rep = spectral_report(sch, approx)
    K = sch.krein
    rep["vanishing_krein"] = [list(t) for t in vanishing_krein(K)]
    orders = _orderings(sch)
    rep["orderings"] = orders
    rep["Q_bipartite"] = is_Q_bipartite(K)
    cometric = orders["cometric"] or []
    rep["Q_antipodal"] = is_Q_antipodal(K, cometric[0]) if cometric else None
    if cometric:
        ka = krein_array(K, cometric[0])
        rep["krein_array"] = {"ordering": cometric[0], "a*": _strs(ka.a), "b*": _strs(ka.b), "c*": _strs(ka.c)}
    return rep


def cmd_krein(sch: Scheme, approx: bool = False) -> dict:
    rep = spectral_report(sch, approx)
    rep["krein"] = sch.krein.to_strings()
    rep["vanishing_krein"] = [list(t) for t in vanishing_krein(sch.krein)]
    return rep


def cmd_orderings(sch: Scheme) -> dict:
    return {"name": sch.name, "n": sch.n, "d": sch.d, **_orderings(sch)}


def _int_list(text: str) -> list[int]:
    try:
        val = json.loads(text) if text.strip().startswith("[") else [int(x) for x in text.split(",") if x.strip()]
        return [int(x) for x in val]
    except (ValueError, TypeError) as exc:
        raise ParseError(f"expected a list of integers, got {text!r}") from exc


def cmd_design(sch: Scheme, subset=None, distribution=None, support=None, design_indices=None,
               size=None) -> dict:
    sp = sch.spectral
    rep = {"name": sch.name, "n": sp.n, "d": sp.d}
    if subset is not None or distribution is not None:
        if subset is not None:
            des = SubsetDesign(sch, frozenset(subset))
            rep["subset"] = sorted(des.members)
        else:
            des = SubsetDesign(sch, distribution=[parse_scalar(str(x)) for x in distribution])
        a = inner_distribution(des)
        cert = mac_williams(a, sp)
        rep["inner_distribution"] = _strs(a)
        rep["aQ"] = _strs(cert.aQ)
        rep["design_indices"] = list(cert.design_indices)
        rep["support"] = list(cert.support)
        rep["half_size"] = cert.half_size
        if des.members is not None:
            rep["eigenspace_support"] = list(eigenspace_support(des))
        size = des.size if size is None else size
        S = cert.support
    elif support is not None:
        S = support
    elif design_indices is not None:
        S = support_from_design_indices(design_indices, sp.d)
    else:
        raise ParseError("design needs --subset, --distribution, --support or --design-indices")
    cr = constrain_design(sp, sch.krein, S, size)
    rep["size"] = size
    rep["constraint"] = {
        "initial": list(cr.initial),
        "steps": [{"h": s.h, "support_before": list(s.support_before), "dichotomy": s.dichotomy,
                   "unconditional": s.unconditional} for s in cr.steps],
        "final": list(cr.final),
        "forced_half_size": cr.forced_half_size,
        "contradiction": cr.contradiction,
        "verdict": cr.verdict,
    }
    return rep


def cmd_pg_scan(s_max: int, t_max: int) -> dict:
    table = pg_scan(s_max, t_max)
    return {"s_max": s_max, "t_max": t_max,
            "entries": [{"s": e.s, "t": e.t, "alpha": e.alpha, "points": e.points, "status": e.status}
                        for e in table]}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


def cmd_reproduce(name: str) -> dict:
    names = list(CHECKS) if name == "all" else [name]
    results = {}
    for nm in names:
        ok, details = run_check(nm)
        results[nm] = {"status": "PASS" if ok else "FAIL", "details": _jsonable(details)}
    return {"checks": results, "passed": all(r["status"] == "PASS" for r in results.values())}


def cmd_catalog_list() -> dict:
    return {"families": [{"name": k, "grammar": g, "description": d} for k, (g, d) in sorted(CATALOG.items())]}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scheme-forge", description="Exact association scheme computations.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_desc(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("descriptor", help="JSON descriptor, path to one, '-' for stdin, or name:params")
        sp.add_argument("--approx", action="store_true", help="add decimal renderings (display only)")
        return sp

    with_desc("info", "spectral data and structure flags")
    with_desc("krein", "full Krein tensor and its vanishing set")
    with_desc("orderings", "cometric and metric orderings")
    d = with_desc("design", "design certificate and Krein constraint trace")
    g = d.add_mutually_exclusive_group()
    g.add_argument("--subset", help="vertex indices (explicit schemes)")
    g.add_argument("--distribution", help="inner distribution as a JSON list of scalar strings")
    g.add_argument("--support", help="eigenspace support, e.g. 1,4")
    g.add_argument("--design-indices", help="design index set T, e.g. 2,3")
    d.add_argument("--size", type=int, help="known subset size")
    s = sub.add_parser("pg-scan", help="partial geometries with a vanishing Krein parameter")
    s.add_argument("--s-max", type=int, default=10)
    s.add_argument("--t-max", type=int, default=100)
    r = sub.add_parser("reproduce", help="run a named check (or 'all')")
    r.add_argument("check")
    c = sub.add_parser("catalog", help="catalog operations")
    c.add_argument("action", choices=["list"])
    return p


def run(argv=None) -> tuple[int, dict]:
    args = build_parser().parse_args(argv)
    cmd = args.command
    if cmd == "pg-scan":
        return 0, cmd_pg_scan(args.s_max, args.t_max)
    if cmd == "reproduce":
        rep = cmd_reproduce(args.check)
        return (0 if rep["passed"] else EXIT_CODES[CHECK_FAILED]), rep
    if cmd == "catalog":
        return 0, cmd_catalog_list()
    sch = load_descriptor(args.descriptor)
    if cmd == "info":
        return 0, cmd_info(sch, args.approx)
    if cmd == "krein":
        return 0, cmd_krein(sch, args.approx)
    if cmd == "orderings":
        return 0, cmd_orderings(sch)
    distribution = None
    if args.distribution is not None:
        try:
            distribution = json.loads(args.distribution)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid distribution JSON: {exc}") from exc
    return 0, cmd_design(
        sch,
        subset=_int_list(args.subset) if args.subset else None,
        distribution=distribution,
        support=_int_list(args.support) if args.support else None,
        design_indices=_int_list(args.design_indices) if args.design_indices else None,
        size=args.size,
    )


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def main(argv=None) -> int:
    try:
        code, report = run(argv)
    except SchemeForgeError as exc:
        err = {"error": {"code": exc.code, "category": exc.category, "message": str(exc)}}
        print(dumps(err))
        return EXIT_CODES.get(exc.category, 1)
    except ValueError as exc:
        # malformed input caught by a library precondition
        print(dumps({"error": {"code": "invalid-input", "category": PARSE, "message": str(exc)}}))
        return EXIT_CODES[PARSE]
    print(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
