"""Reproducible command-line surface.

Every subcommand writes a JSON report (stdout, and to --report when given)
with a schema version, the semantic configuration (including every seed),
and the result.  Reports are byte-identical across reruns and worker counts:
wall-clock timing goes to stderr only, and execution knobs (--threads,
output paths) are not part of the embedded config.

Exit codes: 0 success, 1 input error, 2 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from ramsimple import analysis, arrowing, bounds, gamma, rng, szz
from ramsimple.errors import BudgetExceededError, GraphFormatError
from ramsimple.graph import ColouredGraph
from ramsimple.graphio import (
    load_coloured,
    load_graph,
    parse_coloured,
    write_coloured,
    write_edge_list,
)

SCHEMA = 1


def _emit(command: str, config: dict, result: dict, report_path: str | None) -> None:
    doc = {"schema": SCHEMA, "command": command, "config": config, "result": result}
    text = json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"
    sys.stdout.write(text)
    if report_path:
        with open(report_path, "w", encoding="ascii") as fh:
            fh.write(text)


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(text)


# -- subcommand implementations -------------------------------------------------


def _cmd_sample(args) -> int:
    from ramsimple.graph import sample_gnp

    G = sample_gnp(args.n, args.p, args.seed)
    _write(args.out, write_edge_list(G))
    config = {"n": args.n, "p": args.p, "seed": args.seed}
    result = {"n": G.n, "m": G.m, "min_degree": min(G.degrees()), "max_degree": max(G.degrees())}
    _emit("sample", config, result, args.report)
    return 0


def _cmd_profile(args) -> int:
    G = load_graph(args.graph)
    prof = analysis.neighbourhood_profile(G)
    _emit("profile", {"graph": "embedded", "n": G.n, "m": G.m}, prof.to_dict(), args.report)
    return 0


def _cmd_wb_check(args) -> int:
    G = load_graph(args.graph)
    rep = analysis.well_behaved(G, seed=args.seed, w4_samples=args.w4_samples)
    config = {"n": G.n, "m": G.m, "seed": args.seed, "w4_samples": args.w4_samples}
    _emit("wb-check", config, rep.to_dict(), args.report)
    return 0


def _cmd_mc(args) -> int:
    rep = analysis.monte_carlo(
        args.property, args.n, args.p, args.trials, args.seed, threads=args.threads
    )
    if args.csv:
        _write(args.csv, analysis.CSV_HEADER + "\n" + rep.csv_row() + "\n")
    config = {
        "property": args.property,
        "n": args.n,
        "p": args.p,
        "trials": args.trials,
        "seed": args.seed,
    }
    _emit("mc", config, rep.to_dict(), args.report)
    return 0


def _cmd_gamma_build(args) -> int:
    if args.kind == "affine":
        if args.lam is None or args.eps is None:
            raise ValueError("affine construction needs --lam and --eps")
        ag = gamma.build_affine_gamma(args.delta, args.q, args.lam, args.eps)
        _write(args.out, gamma.write_affine(ag))
        config = {
            "kind": "affine",
            "delta": args.delta,
            "q": args.q,
            "lam": args.lam,
            "eps": args.eps,
        }
        result = {"s": ag.s, "n": ag.n_points, "m": ag.coloured.graph.m}
    elif args.kind == "random":
        if args.seed is None:
            raise ValueError("random construction needs --seed")
        cg = gamma.build_random_gamma(args.delta, args.q, args.seed)
        _write(args.out, write_coloured(cg))
        config = {"kind": "random", "delta": args.delta, "q": args.q, "seed": args.seed}
        result = {"n": cg.graph.n, "m": cg.graph.m}
    else:
        cg = gamma.build_empty_gamma(args.delta, args.q)
        _write(args.out, write_coloured(cg))
        config = {"kind": "empty", "delta": args.delta, "q": args.q}
        result = {"n": cg.graph.n, "m": 0}
    _emit("gamma-build", config, result, args.report)
    return 0


def _load_gamma_file(path: str) -> ColouredGraph:
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    if text.lstrip().startswith("affine"):
        return gamma.parse_affine(text).coloured
    return parse_coloured(text)


def _cmd_gamma_verify(args) -> int:
    cg = _load_gamma_file(args.gamma)
    F = load_graph(args.forest)
    rep = gamma.check_cover_condition(
        cg,
        F,
        args.delta,
        mode=args.mode,
        samples=args.samples,
        seed=args.seed,
        threads=args.threads,
    )
    config = {
        "delta": args.delta,
        "mode": args.mode,
        "samples": args.samples if args.mode == "sampled" else None,
        "seed": args.seed,
        "forest_n": F.n,
        "forest_m": F.m,
    }
    _emit("gamma-verify", config, rep.to_dict(), args.report)
    return 0


def _cmd_arrow(args) -> int:
    G = load_graph(args.host)
    H = load_graph(args.target)
    config = {
        "q": args.q,
        "seed": args.seed,
        "node_budget": args.node_budget,
        "host_n": G.n,
        "host_m": G.m,
        "target_n": H.n,
        "target_m": H.m,
    }
    try:
        res = arrowing.arrows(
            G,
            H,
            args.q,
            node_budget=args.node_budget,
            time_budget_s=args.time_budget,
        )
    except BudgetExceededError as exc:
        result = {
            "arrows": None,
            "nodes": exc.nodes,
            "budget_hit": True,
            "witness": None,
            "millis": None,
        }
        sys.stderr.write(f"budget exceeded: {exc}\n")
        _emit("arrow", config, result, args.report)
        return 2
    if args.witness_out and res.witness is not None:
        _write(args.witness_out, write_coloured(res.witness))
    sys.stderr.write(f"arrow: {res.nodes} nodes, {res.millis:.1f} ms\n")
    _emit("arrow", config, res.to_dict(include_timing=False), args.report)
    return 0


def _cmd_minimal(args) -> int:
    G = load_graph(args.host)
    H = load_graph(args.target)
    rep = arrowing.is_minimal_ramsey(G, H, args.q, node_budget=args.node_budget)
    config = {
        "q": args.q,
        "node_budget": args.node_budget,
        "host_n": G.n,
        "host_m": G.m,
        "target_n": H.n,
        "target_m": H.m,
    }
    _emit("minimal", config, rep.to_dict(), args.report)
    return 0


def _cmd_necessity(args) -> int:
    G = load_graph(args.host)
    H = load_graph(args.target)
    colouring = load_coloured(args.colouring) if args.colouring else None
    rep = arrowing.necessity_gamma(G, H, args.q, args.w, colouring=colouring)
    config = {"q": args.q, "w": args.w, "host_n": G.n, "host_m": G.m}
    _emit("necessity", config, rep.to_dict(), args.report)
    return 0


def _cmd_refute_triangle(args) -> int:
    G = load_graph(args.host)
    H = load_graph(args.target)
    if args.colouring:
        c = load_coloured(args.colouring)
    else:
        Gw = arrowing._graph_without_vertex_edges(G, args.w)
        res = arrowing.arrows(Gw, H, 2)
        if res.arrows:
            raise ValueError("G - w arrows the target: no H-free colouring exists")
        c = res.witness
    out = arrowing.triangle_refuter(G, args.w, H, c)
    if args.out:
        _write(args.out, write_coloured(out.extension))
    config = {"w": args.w, "host_n": G.n, "host_m": G.m}
    _emit("refute-triangle", config, out.to_dict(), args.report)
    return 0


def _cmd_szz_build(args) -> int:
    F = load_graph(args.forest)
    hz = szz.construct_szz(F, args.q)
    _write(args.out, szz.write_szz(hz))
    _emit("szz-build", {"q": args.q, "forest_n": F.n, "forest_m": F.m}, hz.to_dict(), args.report)
    return 0


def _cmd_szz_colour(args) -> int:
    F = load_graph(args.forest)
    hz = szz.construct_szz(F, args.q)
    cg = szz.colour_G_minus_Z(hz)
    _write(args.out, write_coloured(cg))
    result = dict(hz.to_dict())
    result["coloured_edges"] = cg.graph.m
    result["forest_free_verified"] = True
    _emit("szz-colour", {"q": args.q, "forest_n": F.n, "forest_m": F.m}, result, args.report)
    return 0


def _cmd_szz_mono(args) -> int:
    F = load_graph(args.forest)
    hz = szz.construct_szz(F, args.q)
    successes = 0
    cases = {1: 0, 2: 0}
    for t in range(args.trials):
        if args.colouring == "random":
            phi = szz.random_colouring(hz, rng.derive(args.seed, t))
        else:
            phi = szz.case2_colouring(hz, t)
        res = szz.find_mono_forest(hz, phi)
        successes += 1
        cases[res.case] += 1
    config = {
        "q": args.q,
        "colouring": args.colouring,
        "trials": args.trials,
        "seed": args.seed,
        "forest_n": F.n,
        "forest_m": F.m,
    }
    result = {
        "trials": args.trials,
        "validated": successes,
        "case1": cases[1],
        "case2": cases[2],
    }
    _emit("szz-mono", config, result, args.report)
    return 0


def _cmd_bounds(args) -> int:
    G = load_graph(args.graph)
    prof = analysis.neighbourhood_profile(G)
    rep = bounds.qtilde_bounds(prof, G.n, args.eps, log_constant=args.log_constant)
    config = {"eps": args.eps, "log_constant": args.log_constant, "n": G.n, "m": G.m}
    _emit("bounds", config, rep.to_dict(), args.report)
    return 0


def _parse_grid(spec_str: str) -> list[float]:
    parts = spec_str.split(":")
    if len(parts) != 4 or parts[0] != "geometric":
        raise ValueError("grid must look like geometric:LO:HI:COUNT")
    return bounds.geometric_grid(float(parts[1]), float(parts[2]), int(parts[3]))


def _cmd_curves(args) -> int:
    grid = _parse_grid(args.p_grid)
    rows = bounds.corollary_curves(args.n, grid, max_k=args.max_k)
    csv = bounds.CURVES_CSV_HEADER + "\n" + "\n".join(r.csv_row() for r in rows) + "\n"
    _write(args.out, csv)
    config = {"n": args.n, "p_grid": args.p_grid, "max_k": args.max_k}
    from collections import Counter

    counts = Counter(r.regime for r in rows)
    result = {"rows": len(rows), "regimes": dict(sorted(counts.items()))}
    _emit("curves", config, result, args.report)
    return 0


def _cmd_kogan(args) -> int:
    G = load_graph(args.graph)
    rep = bounds.kogan_sparse_set(
        G, args.k, seed=args.seed, restarts=args.restarts, exhaustive=args.exhaustive
    )
    config = {"k": args.k, "seed": args.seed, "restarts": args.restarts, "n": G.n, "m": G.m}
    _emit("kogan", config, rep.to_dict(), args.report)
    return 0


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ramsimple",
        description="Minimum degrees of minimal Ramsey graphs: seeded experiments and exact certificates.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample a seeded G(n,p) graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("profile", help="minimum-degree neighbourhood profile")
    p.add_argument("--graph", required=True)
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_profile)

    p = sub.add_parser("wb-check", help="well-behavedness report")
    p.add_argument("--graph", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--w4-samples", type=int, default=200)
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_wb_check)

    p = sub.add_parser("mc", help="Monte-Carlo property estimate over G(n,p)")
    p.add_argument("--property", required=True, choices=sorted(analysis.PREDICATES))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--csv")
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_mc)

    p = sub.add_parser("gamma-build", help="build a coloured gadget graph")
    p.add_argument("--kind", required=True, choices=["affine", "random", "empty"])
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--lam", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_gamma_build)

    p = sub.add_parser("gamma-verify", help="verify degree and cover conditions")
    p.add_argument("--gamma", required=True)
    p.add_argument("--forest", required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="sampled")
    p.add_argument("--samples", type=int, default=10**4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_gamma_verify)

    p = sub.add_parser("arrow", help="exact arrowing decision")
    p.add_argument("--host", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--node-budget", type=int)
    p.add_argument("--time-budget", type=float)
    p.add_argument("--witness-out")
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_arrow)

    p = sub.add_parser("minimal", help="minimality certificate")
    p.add_argument("--host", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--node-budget", type=int)
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_minimal)

    p = sub.add_parser("necessity", help="coloured-neighbourhood necessity test")
    p.add_argument("--host", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--colouring")
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_necessity)

    p = sub.add_parser("refute-triangle", help="extend an H-free colouring across a low-degree vertex")
    p.add_argument("--host", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--colouring")
    p.add_argument("--out")
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_refute_triangle)

    p = sub.add_parser("szz-build", help="build the forest host graph")
    p.add_argument("--forest", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_szz_build)

    p = sub.add_parser("szz-colour", help="forest-free colouring of the pendant-free part")
    p.add_argument("--forest", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_szz_colour)

    p = sub.add_parser("szz-mono", help="extract monochromatic forests from colourings")
    p.add_argument("--forest", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--colouring", choices=["random", "case2"], default="random")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_szz_mono)

    p = sub.add_parser("bounds", help="threshold bounds from a graph's profile")
    p.add_argument("--graph", required=True)
    p.add_argument("--eps", type=float, default=0.04)
    p.add_argument("--log-constant", type=int, default=bounds.DEFAULT_LOG_CONSTANT)
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("curves", help="threshold curve table over a p-grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p-grid", required=True, help="geometric:LO:HI:COUNT")
    p.add_argument("--max-k", type=int, default=8)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_curves)

    p = sub.add_parser("kogan", help="bounded-degree vertex subset")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--exhaustive", action="store_true", default=None)
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_kogan)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceededError as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return 2
    except (GraphFormatError, ValueError, OSError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
