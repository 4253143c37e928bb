"""Command-line front end: ``shortcut-lab <command> [options]``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors (bad flags, malformed graphs, parameters out of range).
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import report
from .constants import admissible_constants, sweep_rational_inequalities
from .cycles import SearchConfig, antipodal_ratio, global_to_local_violations, search_max_almost_isometric_cycle, shortcut_profile
from .generators import grid_boundary
from .graphs import DiscreteCircle, DistanceOracle, Graph, GraphError, load_graph
from .milnor_schwarz import BallTooSmall, convergence_sweep, make_action, parse_preset, sweep_radius
from .ngon import cycle_to_ngon, ngon_to_cycle, search_ngon
from .tightening import TighteningConfig, greedy_tighten, verify_trace

THREADS_ENV = "SHORTCUT_LAB_THREADS"


class UsageError(Exception):
    pass


def fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def fraction_list(text: str) -> list[Fraction]:
    return [fraction(tok) for tok in text.split(",") if tok.strip()]


def parse_circle(text: str, graph: Graph) -> DiscreteCircle:
    """``boundary`` (grids), ``identity`` (the vertex order 0..n-1) or a vertex list.

    Lists are comma separated, or semicolon separated when labels contain commas.
    """
    text = text.strip()
    if text == "boundary":
        name = graph.name
        if not name.startswith("grid:"):
            raise UsageError("--circle boundary needs a grid:AxB graph")
        w, _, h = name[5:].partition("x")
        return DiscreteCircle(tuple(grid_boundary(int(w), int(h))))
    if text == "identity":
        return DiscreteCircle(tuple(range(graph.vertex_count)))
    sep = ";" if ";" in text else ","
    verts = []
    for tok in text.split(sep):
        tok = tok.strip()
        if not tok:
            continue
        verts.append(graph.vertex(int(tok) if tok.lstrip("-").isdigit() else tok))
    return DiscreteCircle(tuple(verts)).check(graph)


def resolve_threads(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(THREADS_ENV)
    if env is None or not env.strip():
        return 1
    try:
        n = int(env)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {env!r}") from None
    if n < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {env!r}")
    return n


def _graph(args) -> tuple[Graph, DistanceOracle]:
    graph = load_graph(args.graph)
    return graph, DistanceOracle(graph)


def _search_config(args, threads: int) -> SearchConfig:
    return SearchConfig(mode=args.mode, width=args.width, workers=threads)


def cmd_profile(args, threads):
    graph, oracle = _graph(args)
    prof = shortcut_profile(graph, oracle, args.K, args.cap, _search_config(args, threads))
    return report.profile_result(prof, args.mode), True


def cmd_search(args, threads):
    graph, oracle = _graph(args)
    (K,) = args.K if len(args.K) == 1 else (None,)
    if K is None:
        raise UsageError("search takes a single K; use profile for a grid of values")
    rep = search_max_almost_isometric_cycle(graph, oracle, K, args.cap, _search_config(args, threads))
    out = report.search_result(graph.name, K, args.cap, args.mode, rep)
    ok = True
    if rep is not None:
        bad = global_to_local_violations(rep.circle, oracle, rep.k_value)
        out["local_check_violations"] = len(bad)
        ok = not bad
    return out, ok


def cmd_cycle(args, threads):
    graph, oracle = _graph(args)
    circle = parse_circle(args.circle, graph)
    rep = antipodal_ratio(circle, oracle, points=args.points)
    out = report.circle_result(rep, graph.labels)
    ok = True
    if args.K is not None:
        out["K"] = args.K
        out["almost_isometric"] = rep.is_almost_isometric(args.K)
        bad = global_to_local_violations(circle, oracle, args.K, args.points) if out["almost_isometric"] else []
        out["local_check_violations"] = len(bad)
        ok = not bad
    return out, ok


def cmd_ngon(args, threads):
    graph, oracle = _graph(args)
    emb = search_ngon(graph, oracle, args.n, args.K, workers=threads)
    out = {"graph": graph.name, "n": args.n, "K": args.K, "L": args.L, "embedding": report.embedding_result(emb)}
    ok = True
    if emb is None:
        out["stitched"] = out["resampled"] = None
        out["notes"] = ["no embedding found"]
        return out, ok
    notes = []
    if args.L > emb.k_achieved and emb.k_achieved != float("inf"):
        try:
            st = ngon_to_cycle(emb, args.L, oracle)
        except ValueError as exc:
            st = None
            notes.append(f"stitching skipped: {exc}")
    else:
        st = None
        notes.append(f"stitching skipped: L must exceed the achieved constant {emb.k_achieved}")
    out["stitched"] = report.stitched_result(st) if st else None
    if st is not None:
        ok = st.guarantee_holds is not False
        try:
            sn = cycle_to_ngon(st.circle, st.report, args.n, oracle)
            out["resampled"] = report.sampled_result(sn)
            ok = ok and sn.within_bound
        except ValueError as exc:
            out["resampled"] = None
            notes.append(f"resampling skipped: {exc}")
    else:
        out["resampled"] = None
    out["notes"] = notes
    return out, ok


def cmd_tighten(args, threads):
    graph, oracle = _graph(args)
    circle = parse_circle(args.circle, graph)
    cfg = TighteningConfig(args.L, args.C, args.R)
    trace = greedy_tighten(circle, oracle, cfg)
    ver = verify_trace(trace, args.K, args.N)
    out = {"graph": graph.name, "input_circle": list(circle.vertices), **report.trace_result(trace, ver)}
    return out, ver.ok


def cmd_constants(args, threads):
    consts = admissible_constants(args.N, args.L, args.R, args.K)
    sweep = sweep_rational_inequalities(args.samples, args.seed) if args.samples > 0 else None
    return report.constants_result(consts, sweep), sweep is None or sweep.ok


def cmd_fine_ms(args, threads):
    name, fixed = parse_preset(args.action)
    radius = fixed if fixed is not None else sweep_radius(args.R, args.t, args.sample_radius)
    action = make_action(name, radius)
    rows = convergence_sweep(action, args.R, args.t, args.sample_radius)
    out = {"action": action.name, "ball_radius": radius, **report.fine_ms_result(rows)}
    certified = [r.K_certified for r in rows]
    out["certified_strictly_decreasing"] = all(b < a for a, b in zip(certified, certified[1:]))
    return out, all(r.ok for r in rows)


COMMANDS = {
    "profile": cmd_profile,
    "search": cmd_search,
    "cycle": cmd_cycle,
    "ngon": cmd_ngon,
    "tighten": cmd_tighten,
    "constants": cmd_constants,
    "fine-ms": cmd_fine_ms,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker processes for searches (default: ${THREADS_ENV} or 1)")

    p = argparse.ArgumentParser(prog="shortcut-lab", description="Exact experiments on almost-isometric cycles.")
    from . import __version__

    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_arg(sp):
        sp.add_argument("--graph", required=True, help="generator spec (cycle:8, grid:7x2, ...) or edge-list file")

    def search_args(sp):
        sp.add_argument("--cap", type=int, required=True, help="maximal cycle length")
        sp.add_argument("--mode", choices=("exact", "beam"), default="exact")
        sp.add_argument("--width", type=int, default=32, help="beam width")

    sp = sub.add_parser("profile", parents=[common], help="longest almost-isometric cycle for each K")
    graph_arg(sp)
    sp.add_argument("--K", type=fraction_list, required=True, help="comma separated K values, each > 1")
    search_args(sp)

    sp = sub.add_parser("search", parents=[common], help="longest almost-isometric cycle for one K")
    graph_arg(sp)
    sp.add_argument("--K", type=fraction_list, required=True)
    search_args(sp)

    sp = sub.add_parser("cycle", parents=[common], help="antipodal ratio of a given closed walk")
    graph_arg(sp)
    sp.add_argument("--circle", required=True, help="boundary | identity | comma separated vertices")
    sp.add_argument("--points", choices=("anchored", "all"), default="anchored")
    sp.add_argument("--K", type=fraction, default=None, help="also test against this K")

    sp = sub.add_parser("ngon", parents=[common], help="n-gon embedding search and both conversions")
    graph_arg(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--K", type=fraction, required=True)
    sp.add_argument("--L", type=fraction, default=Fraction(11, 10), help="stitching constant, must exceed K")

    sp = sub.add_parser("tighten", parents=[common], help="greedy tightening with verification")
    graph_arg(sp)
    sp.add_argument("--circle", required=True, help="boundary | identity | comma separated vertices")
    sp.add_argument("--L", type=fraction, required=True)
    sp.add_argument("--C", type=fraction, required=True)
    sp.add_argument("--R", type=fraction, default=Fraction(0), help="0 geodesic mode, 1 vertex mode")
    sp.add_argument("--N", type=fraction, default=Fraction(2))
    sp.add_argument("--K", type=fraction, default=None, help="claimed ratio of the input (default: measured)")

    sp = sub.add_parser("constants", parents=[common], help="admissible constants and the inequality sweep")
    sp.add_argument("--N", type=fraction, required=True)
    sp.add_argument("--L", type=fraction, required=True)
    sp.add_argument("--R", type=fraction, default=Fraction(0))
    sp.add_argument("--K", type=fraction, default=None)
    sp.add_argument("--samples", type=int, default=1000, help="random (L, N) pairs; 0 skips the sweep")
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("fine-ms", parents=[common], help="orbit-map constants across generating radii")
    sp.add_argument("--action", required=True, help="preset name, optionally name:radius")
    sp.add_argument("--R", type=fraction, default=Fraction(0))
    sp.add_argument("--t", type=fraction_list, default=[Fraction(x) for x in (2, 4, 8, 16)])
    sp.add_argument("--sample-radius", type=int, default=50)
    return p


def run(argv: list[str] | None = None) -> tuple[int, str, str | None]:
    """Parse, execute and render; returns (exit status, rendered report, output path)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        threads = resolve_threads(args.threads)
        if threads < 1:
            raise UsageError("--threads must be positive")
        result, ok = COMMANDS[args.command](args, threads)
    except (UsageError, GraphError, BallTooSmall, ValueError) as exc:
        parser.exit(2, f"shortcut-lab {args.command}: error: {exc}\n")
    # thread count never changes results, so it stays out of the report
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("output", "threads")}
    doc = report.envelope(args.command, config, result, "ok" if ok else "verification-failed")
    text = report.dumps(doc) if args.format == "json" else report.to_csv(doc)
    return (0 if ok else 1), text, args.output


def main(argv: list[str] | None = None) -> int:
    status, text, output = run(argv)
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
