"""Command-line entry point: ``simtri <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import __version__
from .catalog import catalog, catalog_entry, certificate_for_ordering, find_dense_ordering, format_certificate
from .constructions import (
    DEFAULT_RATIO,
    ConstructionSpec,
    HSequence,
    build_planar_construction,
    build_simplex_construction,
    s_edge_count,
    simplex_spec_for,
)
from .embedder import format_report, verify_forbidden
from .geometry import EQUILATERAL, TriangleShape, build_similarity_graph, count_isomorphic, read_points, write_points
from .hypergraph import FormatError, ThreeGraph, format_hypergraph, read_hypergraph, write_hypergraph
from .reproduce import DEFAULT_SEED, ReproContext, format_table, run_all
from .structure import best_edge_partition, best_t221_partition, maximize_g, quadratic_bound_checks
from .turan import SearchRefused, exact_turan, verify_witness

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("simtri")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    options: dict = field(default_factory=dict)
    json: bool = False
    seed: int = DEFAULT_SEED
    threads: int = 1

    def __post_init__(self) -> None:
        eps = self.options.get("eps")
        if eps is not None and not eps > 0:
            raise UsageError(f"--eps must be positive, got {eps}")
        if self.threads < 1:
            raise UsageError("--threads must be at least 1")


def emit_json(payload: dict) -> None:
    print(json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2, sort_keys=True))


def parse_triple(text: str, what: str) -> tuple[float, float, float]:
    parts = text.replace(",", " ").split()
    try:
        vals = tuple(float(x) for x in parts)
    except ValueError:
        raise UsageError(f"{what} must be three numbers, got {text!r}") from None
    if len(vals) != 3:
        raise UsageError(f"{what} must be three numbers, got {text!r}")
    return vals


def parse_shape(text: Optional[str], deg: bool) -> TriangleShape:
    if text is None:
        return EQUILATERAL
    vals = parse_triple(text, "--shape")
    try:
        return TriangleShape.from_degrees(*vals) if deg else TriangleShape(vals)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def resolve_graph(name: Optional[str], path: Optional[str]) -> tuple[str, ThreeGraph]:
    if (name is None) == (path is None):
        raise UsageError("give exactly one of --name and --file")
    if name is not None:
        try:
            return catalog_entry(name).name, catalog_entry(name).graph
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    return Path(path).name, read_hypergraph(path)


def resolve_family(spec: str) -> list[ThreeGraph]:
    """``F`` for the whole catalog, else comma-separated catalog names or files."""
    if spec == "F":
        return [e.graph for e in catalog()]
    out = []
    for token in spec.split(","):
        try:
            out.append(catalog_entry(token).graph)
        except KeyError:
            if not Path(token).exists():
                raise UsageError(f"{token!r} is neither a catalog name nor a file") from None
            out.append(read_hypergraph(token))
    return out


# -- subcommands -------------------------------------------------------------------


def cmd_catalog(cfg: RunConfig) -> int:
    opts = cfg.options
    entries = [catalog_entry(opts["name"])] if opts.get("name") else list(catalog())
    if cfg.json:
        rows = []
        for e in entries:
            cert = find_dense_ordering(e.graph)
            rows.append({
                "name": e.name,
                "source": e.source,
                "dense": cert is not None,
                "n": e.graph.n,
                "edges": [[v + 1 for v in t] for t in e.graph.sorted_edges()],
                "ordering": [v + 1 for v in cert.ordering] if cert else None,
            })
        emit_json({"entries": rows})
        return EXIT_OK
    for i, e in enumerate(entries):
        if len(entries) > 1:
            print(("\n" if i else "") + f"# {e.name} ({e.source})")
        if opts.get("emit") == "certificate":
            cert = find_dense_ordering(e.graph)
            sys.stdout.write(format_certificate(cert) if cert else "# no dense ordering\n")
        else:
            sys.stdout.write(format_hypergraph(e.graph))
    return EXIT_OK


def cmd_forbid_check(cfg: RunConfig) -> int:
    opts = cfg.options
    name, H = resolve_graph(opts.get("name"), opts.get("file"))
    if opts.get("ordering"):
        try:
            ordering = [int(x) - 1 for x in opts["ordering"].split()]
            cert = certificate_for_ordering(H, ordering)
        except ValueError as exc:
            raise UsageError(f"bad --ordering: {exc}") from None
    else:
        cert = find_dense_ordering(H)
    if cert is None:
        msg = f"{name}: no dense ordering, cannot run the embedding check"
        if cfg.json:
            emit_json({"name": name, "verified": False, "error": msg})
        else:
            print(msg)
        return EXIT_FAIL
    report = verify_forbidden(H, cert)
    if cfg.json:
        emit_json({"name": name, **report.to_dict()})
    else:
        sys.stdout.write(format_report(name, report))
    return EXIT_OK if report.verified else EXIT_FAIL


def cmd_count(cfg: RunConfig) -> int:
    opts = cfg.options
    P = read_points(opts["points"])
    eps = opts.get("eps")
    if eps is None:
        raise UsageError("--eps is required")
    if opts.get("isomorphic"):
        if opts.get("sides") is None:
            raise UsageError("--isomorphic needs --sides")
        sides = parse_triple(opts["sides"], "--sides")
        count = count_isomorphic(P, sides, eps)
        payload = {"mode": "isomorphic", "sides": list(sides), "eps": eps, "points": len(P), "count": count}
    else:
        deg = opts.get("deg", False)
        shape = parse_shape(opts.get("shape"), deg)
        eps_rad = math.radians(eps) if deg else eps
        G = build_similarity_graph(P, shape, eps_rad)
        count = G.num_edges
        payload = {"mode": "similar", "shape_radians": list(shape.angles), "eps_radians": eps_rad,
                   "points": len(P), "count": count}
    if cfg.json:
        emit_json(payload)
    else:
        print(count)
    return EXIT_OK


def cmd_construct(cfg: RunConfig) -> int:
    opts = cfg.options
    n = opts["n"]
    shape = parse_shape(opts.get("shape"), opts.get("deg", False))
    ratio = opts.get("ratio") or DEFAULT_RATIO
    try:
        if opts["kind"] == "planar":
            if opts.get("dim") not in (None, 2):
                raise UsageError("the planar construction lives in dimension 2")
            P = build_planar_construction(n, ConstructionSpec("planar-iterated", shape, ratio))
        else:
            dim = opts.get("dim") or 3
            P = build_simplex_construction(n, dim, simplex_spec_for(dim, shape, ratio))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if opts.get("out"):
        write_points(P, opts["out"])
    eps = opts.get("eps") or math.radians(1.0)
    count = build_similarity_graph(P, shape, eps).num_edges if n <= 200 else None
    if cfg.json:
        emit_json({"kind": opts["kind"], "n": n, "dim": P.dim, "ratio": ratio,
                   "out": opts.get("out"), "count": count})
    else:
        where = f" -> {opts['out']}" if opts.get("out") else ""
        tail = f", {count} triangles within {eps:.4g} rad" if count is not None else ""
        print(f"{n} points in R^{P.dim}{where}{tail}")
    return EXIT_OK


def cmd_hseq(cfg: RunConfig) -> int:
    opts = cfg.options
    n = opts["n"]
    if n < 0:
        raise UsageError("--n must be nonnegative")
    cache = opts.get("cache")
    seq = HSequence.load(cache) if cache and Path(cache).exists() else HSequence()
    rows, mismatches = [], []
    for m in range(n + 1):
        h = seq.value(m)
        a, b, c = seq.split(m)
        rows.append((m, h, a, b, c))
        if h != s_edge_count(m):
            mismatches.append(m)
    if cache:
        seq.save(cache, upto=max(n, max(seq.values)))
    if mismatches:
        log.warning("h(n) differs from e(S(n)) at n = %s", mismatches)
    if cfg.json:
        emit_json({"rows": [dict(zip(("n", "h", "a", "b", "c"), r)) for r in rows],
                   "differs_from_S": mismatches})
    else:
        for r in rows:
            print(" ".join(str(x) for x in r))
    return EXIT_OK


def cmd_turan(cfg: RunConfig) -> int:
    opts = cfg.options
    fam_spec = opts.get("family") or "F"
    family = resolve_family(fam_spec)
    try:
        res = exact_turan(opts["n"], family, fam_spec, force=opts.get("force", False),
                          checkpoint=opts.get("checkpoint"))
    except SearchRefused:
        raise UsageError(f"n={opts['n']} is above the default guard; pass --force to run anyway") from None
    ok = verify_witness(res, family)
    if opts.get("witness"):
        write_hypergraph(res.witness, opts["witness"])
    if cfg.json:
        emit_json({**res.to_dict(), "witness_verified": ok})
    else:
        print(f"ex({res.n}, {fam_spec}) = {res.max_edges}")
        print(f"nodes expanded: {res.nodes_expanded}")
        print(f"witness verified: {ok}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_analyze(cfg: RunConfig) -> int:
    opts = cfg.options
    G = read_hypergraph(opts["graph"])
    finder = best_t221_partition if opts.get("t221") else best_edge_partition
    try:
        rep = finder(G)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.json:
        emit_json(rep.to_dict())
        return EXIT_OK
    d = rep.to_dict()
    print("edge: " + " ".join(map(str, d["edge"])))
    if d["base"]:
        print("base: " + " ".join(map(str, d["base"])))
    for i, p in enumerate(d["parts"], start=1):
        print(f"A{i} ({d['fractions'][i - 1]}): " + " ".join(map(str, p)))
    print("leftover: " + (" ".join(map(str, d["leftover"])) or "(none)"))
    print(f"objective: {rep.objective} ({float(rep.objective):.6f})")
    print(f"disjoint: {rep.disjoint}  min_size_ok: {rep.min_size_ok}  leftover_ok: {rep.leftover_ok}")
    return EXIT_OK


def cmd_selfcheck(cfg: RunConfig) -> int:
    bc = quadratic_bound_checks()
    gm = maximize_g()
    g_ok = max(abs(x - 1 / 3) for x in gm.argmax) < 1e-6 and abs(gm.value - 1 / 24) < 1e-9
    if cfg.json:
        emit_json({
            "checks": [{"name": c.name, "computed": str(c.computed), "claimed": str(c.claimed),
                        "matches": c.matches, "below_bound": c.below_bound} for c in bc.checks],
            "argmax": str(bc.argmax),
            "g_argmax": list(gm.argmax),
            "g_value": gm.value,
            "passed": bc.passed and g_ok,
        })
    else:
        for c in bc.checks:
            mark = "ok" if c.matches and c.below_bound else "MISMATCH"
            print(f"{c.name}: computed {c.computed} ({float(c.computed):.6f}), "
                  f"claimed {c.claimed} ({float(c.claimed):.6f}) [{mark}]")
        print(f"quadratic argmax: {bc.argmax}")
        print("g maximum: ({:.7f}, {:.7f}, {:.7f}) value {:.12f} [{}]".format(
            *gm.argmax, gm.value, "ok" if g_ok else "MISMATCH"))
    return EXIT_OK if bc.passed and g_ok else EXIT_FAIL


def cmd_reproduce(cfg: RunConfig) -> int:
    opts = cfg.options
    overrides = {}
    for item in opts.get("override") or []:
        name, sep, path = item.partition("=")
        if not sep:
            raise UsageError(f"--override expects NAME=FILE, got {item!r}")
        try:
            name = catalog_entry(name).name
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        overrides[name] = read_hypergraph(path)
    hcache = opts.get("hcache")
    seq = HSequence.load(hcache) if hcache else HSequence()
    ctx = ReproContext(overrides=overrides, hseq=seq, seed=cfg.seed)
    keys = set(opts["only"]) if opts.get("only") else None
    on_result = None if cfg.json else (lambda r: print(r.line(), flush=True))
    results = run_all(ctx, keys, on_result)
    passed = all(r.passed for r in results)
    if cfg.json:
        emit_json({"results": [r.to_dict() for r in results], "passed": passed})
    else:
        print(format_table(results).splitlines()[-1])
    return EXIT_OK if passed else EXIT_FAIL


COMMANDS = {
    "catalog": cmd_catalog,
    "forbid-check": cmd_forbid_check,
    "count": cmd_count,
    "construct": cmd_construct,
    "hseq": cmd_hseq,
    "turan": cmd_turan,
    "analyze": cmd_analyze,
    "selfcheck": cmd_selfcheck,
    "reproduce": cmd_reproduce,
}


def run(cfg: RunConfig) -> int:
    try:
        return COMMANDS[cfg.command](cfg)
    except (UsageError, FormatError, OSError) as exc:
        print(f"simtri {cfg.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized checks")
    common.add_argument("--threads", type=int, default=1, help="upper bound on worker count")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="simtri", description=__doc__)
    parser.add_argument("--version", action="version", version=f"simtri {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="list the forbidden family")
    p.add_argument("--name")
    p.add_argument("--emit", choices=["hypergraph", "certificate"], default="hypergraph")

    p = sub.add_parser("forbid-check", parents=[common], help="run the lattice embedding check")
    p.add_argument("--name")
    p.add_argument("--file")
    p.add_argument("--ordering", help='1-indexed dense ordering, e.g. "1 2 3 4"')

    p = sub.add_parser("count", parents=[common], help="count similar or isomorphic triangles")
    p.add_argument("--points", required=True)
    p.add_argument("--shape", help='three angles, e.g. "60 60 60" with --deg')
    p.add_argument("--eps", type=float)
    p.add_argument("--deg", action="store_true", help="angles and eps in degrees")
    p.add_argument("--isomorphic", action="store_true", help="compare side lengths instead of angles")
    p.add_argument("--sides")

    p = sub.add_parser("construct", parents=[common], help="build an iterated point construction")
    p.add_argument("--kind", choices=["planar", "simplex"], default="planar")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--shape")
    p.add_argument("--deg", action="store_true")
    p.add_argument("--ratio", type=float)
    p.add_argument("--dim", type=int)
    p.add_argument("--eps", type=float, help="eps in radians for the summary count")
    p.add_argument("--out")

    p = sub.add_parser("hseq", parents=[common], help="print h(0..N) with optimal splits")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cache")

    p = sub.add_parser("turan", parents=[common], help="exact Turán number by branch and bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", default="F", help="F, catalog names, or hypergraph files (comma separated)")
    p.add_argument("--force", action="store_true", help="allow n above the default guard")
    p.add_argument("--checkpoint")
    p.add_argument("--witness")

    p = sub.add_parser("analyze", parents=[common], help="partition diagnostics for a 3-graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--t221", action="store_true", help="scan copies of T_{2,2,1} instead of edges")

    sub.add_parser("selfcheck", parents=[common], help="exact constant checks")

    p = sub.add_parser("reproduce", parents=[common], help="run every acceptance check")
    p.add_argument("--override", action="append", metavar="NAME=FILE", help="replace a catalog entry")
    p.add_argument("--hcache", help="preload h-sequence values from a cache file")
    p.add_argument("--only", action="append", metavar="KEY", help="run only these rows")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    ns = vars(args)
    options = {k: v for k, v in ns.items() if k not in ("command", "json", "seed", "threads", "verbose")}
    try:
        cfg = RunConfig(args.command, options, args.json, args.seed, args.threads)
    except UsageError as exc:
        print(f"simtri {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
