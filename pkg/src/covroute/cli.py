"""Command-line entry points: plan, ingest, simulate, bench, serve.

Exit codes for ``plan``: 0 when a constrained route was found (optimal
or relaxed), 2 for best-effort fallback, 3 for unreachable targets, 1
for usage or input parse errors. JSON output is canonical (fixed field
order, 6-decimal floats) so identical inputs give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from math import inf
from typing import Sequence

from .constraints import RelaxationPolicy, Requirements, SweepPolicy
from .graph import GraphError, graph_to_doc, load_graph
from .ingest import LabelingPolicy, TraceError, apply_labels, label_trace, parse_trace
from .jsonio import canonical_dumps
from .planner import PlannerConfig, plan, result_to_doc
from .presets import get_preset
from .randgraph import far_apart_pair, random_planar_graph
from .sim import SimError, event_from_doc, run, start, state_to_doc

PLAN_EXIT_CODES = {"optimal": 0, "relaxed": 0, "best_effort": 2, "unreachable": 3}


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on usage errors; this tool reserves 2
    for best-effort plans, so usage errors exit 1 instead."""

    def error(self, message: str):  # noqa: D401 - argparse hook
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", help="condition preset supplying alpha/d1/d2 defaults")
    p.add_argument("--alpha", type=float, help="breakage weight (default 1.0)")
    p.add_argument("--d1-s", type=float, help="total breakage budget, seconds ('inf' = unbounded)")
    p.add_argument("--d2-s", type=float, help="contiguous breakage budget, seconds")
    p.add_argument("--k", type=int, default=8, help="candidate paths per budget row (default 8)")
    p.add_argument("--relax-d", type=float, default=1.5, help="d1 relaxation growth factor")
    p.add_argument("--relax-max-s", type=float, default=inf, help="d1 relaxation upper bound")
    p.add_argument("--beta1", type=float, default=1.0, help="sweep lower scale on d1")
    p.add_argument("--beta2", type=float, default=1.0, help="sweep upper scale on d1")
    p.add_argument("--h", type=int, default=1, help="sweep rows across [beta1*d1, beta2*d1]")


def _config_from_args(args: argparse.Namespace) -> PlannerConfig:
    alpha, d1, d2 = 1.0, inf, inf
    if args.preset:
        preset = get_preset(args.preset)
        alpha, d1, d2 = preset.alpha, preset.d1_s, preset.d2_s
    if args.alpha is not None:
        alpha = args.alpha
    if args.d1_s is not None:
        d1 = args.d1_s
    if args.d2_s is not None:
        d2 = args.d2_s
    return PlannerConfig(
        alpha=alpha,
        requirements=Requirements(d1_s=d1, d2_s=d2),
        k=args.k,
        relaxation=RelaxationPolicy(growth=args.relax_d, max_d1_s=args.relax_max_s),
        sweep=SweepPolicy(low=args.beta1, high=args.beta2, rows=args.h),
    )


def _fmt_seconds(v: float) -> str:
    return f"{v:.1f} s ({v / 60.0:.1f} min)"


def _plan_text(doc: dict) -> str:
    lines = [f"status: {doc['status']}"]
    if doc["chosen_path"]:
        lines.append("route: " + " -> ".join(doc["chosen_path"]))
        lines.append("total duration: " + _fmt_seconds(doc["total_duration_s"]))
        lines.append("breakage: " + _fmt_seconds(doc["breakage_s"]))
        lines.append("max breakage run: " + _fmt_seconds(doc["max_breakage_run_s"]))
        lines.append(f"cost: {doc['cost']:.1f} (alpha {doc['alpha']})")
    eff = doc["effective_d1_s"]
    lines.append("effective d1: " + ("unbounded" if eff is None else _fmt_seconds(eff)))
    total = sum(r["path_count"] for r in doc["matrix_summary"])
    lines.append(f"candidates: {total} across {len(doc['matrix_summary'])} budget rows")
    return "\n".join(lines)


def _cmd_plan(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    config = _config_from_args(args)
    result = plan(g, args.from_node, args.to, config)
    doc = result_to_doc(result)
    if args.format == "json":
        print(canonical_dumps(doc))
    else:
        print(_plan_text(doc))
    return PLAN_EXIT_CODES[result.status]


def _cmd_ingest(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    samples = parse_trace(args.trace)
    policy = LabelingPolicy(
        threshold_kbps=args.threshold_kbps,
        hysteresis_kbps=args.hysteresis_kbps,
        min_segment_s=args.min_segment_s,
    )
    labeled = apply_labels(g, label_trace(g, samples, policy))
    text = canonical_dumps(graph_to_doc(labeled))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    config = _config_from_args(args)
    events = []
    if args.events:
        with open(args.events, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, list):
            raise ValueError("events file must hold a JSON array")
        events = [event_from_doc(e) for e in raw]
    try:
        state = start(g, args.from_node, args.to, config)
    except SimError:
        print(
            canonical_dumps({"status": "unreachable", "from": args.from_node, "to": args.to}),
            file=sys.stderr,
        )
        return 3
    for snapshot in run(state, events, args.step):
        print(canonical_dumps(state_to_doc(snapshot)))
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    k_list = [int(v) for v in args.k_list.split(",") if v.strip()]
    if not k_list:
        raise ValueError("--k-list must name at least one k")
    g = random_planar_graph(args.nodes, args.edges, args.seed)
    s, t = far_apart_pair(g)
    rows = []
    for k in k_list:
        config = PlannerConfig(
            alpha=args.alpha,
            requirements=Requirements(
                d1_s=args.d1_s if args.d1_s is not None else inf,
                d2_s=args.d2_s if args.d2_s is not None else inf,
            ),
            k=k,
        )
        times = []
        for _ in range(args.reps):
            t0 = time.perf_counter()
            plan(g, s, t, config)
            times.append(time.perf_counter() - t0)
        rows.append(
            {
                "k": k,
                "reps": args.reps,
                "mean_s": statistics.fmean(times),
                "min_s": min(times),
                "max_s": max(times),
            }
        )
    if args.format == "json":
        print(
            canonical_dumps(
                {"nodes": args.nodes, "edges": args.edges, "seed": args.seed, "rows": rows}
            )
        )
    else:
        print(f"graph: {args.nodes} nodes, {args.edges} directed edges, seed {args.seed}")
        print(f"route: {s} -> {t}")
        print(f"{'k':>8} {'reps':>6} {'mean_s':>10} {'min_s':>10} {'max_s':>10}")
        for r in rows:
            print(
                f"{r['k']:>8} {r['reps']:>6} {r['mean_s']:>10.4f} "
                f"{r['min_s']:>10.4f} {r['max_s']:>10.4f}"
            )
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    host, _, port = args.bind.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"--bind must look like host:port, got {args.bind!r}")
    app = create_app(load_graph(args.graph), console_dir=args.console)
    uvicorn.run(app, host=host, port=int(port), log_level="warning")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="covroute", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_plan = sub.add_parser("plan", help="plan a coverage-aware route")
    p_plan.add_argument("--graph", required=True, help="road graph JSON file")
    p_plan.add_argument("--from", dest="from_node", required=True, help="source node id")
    p_plan.add_argument("--to", required=True, help="target node id")
    _add_config_flags(p_plan)
    p_plan.add_argument("--format", choices=("json", "text"), default="json")
    p_plan.set_defaults(fn=_cmd_plan)

    p_ing = sub.add_parser("ingest", help="derive coverage labels from a drive trace")
    p_ing.add_argument("--graph", required=True)
    p_ing.add_argument("--trace", required=True, help="bandwidth trace CSV")
    p_ing.add_argument("--out", help="write labeled graph here (default: stdout)")
    p_ing.add_argument("--threshold-kbps", type=float, default=256.0)
    p_ing.add_argument("--hysteresis-kbps", type=float, default=64.0)
    p_ing.add_argument("--min-segment-s", type=float, default=8.0)
    p_ing.set_defaults(fn=_cmd_ingest)

    p_sim = sub.add_parser("simulate", help="headless transport replay (JSON lines)")
    p_sim.add_argument("--graph", required=True)
    p_sim.add_argument("--from", dest="from_node", required=True)
    p_sim.add_argument("--to", required=True)
    _add_config_flags(p_sim)
    p_sim.add_argument("--events", help="JSON array of timed events")
    p_sim.add_argument("--step", type=float, default=1.0, help="step size in seconds")
    p_sim.set_defaults(fn=_cmd_simulate)

    p_bench = sub.add_parser("bench", help="time plan() on random road networks")
    p_bench.add_argument("--nodes", type=int, default=12000)
    p_bench.add_argument("--edges", type=int, default=30000, help="directed edge count")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--k-list", default="1,10,100,1000")
    p_bench.add_argument("--reps", type=int, default=10)
    p_bench.add_argument("--alpha", type=float, default=1.0)
    p_bench.add_argument("--d1-s", type=float, default=None)
    p_bench.add_argument("--d2-s", type=float, default=None)
    p_bench.add_argument("--format", choices=("text", "json"), default="text")
    p_bench.set_defaults(fn=_cmd_bench)

    p_srv = sub.add_parser("serve", help="run the local HTTP service")
    p_srv.add_argument("--graph", required=True)
    p_srv.add_argument("--bind", default="127.0.0.1:8585")
    p_srv.add_argument("--console", help="also serve a built dispatch console from this directory")
    p_srv.set_defaults(fn=_cmd_serve)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (GraphError, TraceError, SimError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"covroute: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
