"""Command-line front end: generate graphs, analyze graph files, run
experiment configs, and run the invariant suites.

Exit codes: 0 success, 1 verification found violations (or an experiment
criterion failed), 2 usage/parameter error, 3 runtime error. Identical
invocations produce byte-identical data outputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .analysis import (
    clustering_coefficient,
    component_diameters,
    connected_components,
    degree_statistics,
)
from .experiments import load_config_file, persist_report, run_experiment
from .generators import generate_idealized, generate_kpkvb, generate_kpkvb_poisson
from .geometry import ModelParams
from .serialization import read_graph_file, write_graph_file
from .verify import run_suite

MODELS = ("kpkvb", "poisson", "idealized")
REPORTS = ("diameter", "degrees", "clustering", "components")


def _echo(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def cmd_generate(args) -> int:
    try:
        params = ModelParams(args.n, args.alpha, args.nu)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    resolved = {
        "command": "generate",
        "model": args.model,
        "n": args.n,
        "alpha": args.alpha,
        "nu": args.nu,
        "R": params.radius,
        "lambda": params.intensity,
        "seed": args.seed,
        "out": args.out,
        "version": __version__,
    }
    _echo(resolved)
    try:
        if args.model == "kpkvb":
            g = generate_kpkvb(params, seed=args.seed)
        elif args.model == "poisson":
            g = generate_kpkvb_poisson(params, seed=args.seed, force_z=args.force_z)
        else:
            g = generate_idealized(args.alpha, params.intensity, params.radius, seed=args.seed)
        write_graph_file(g, args.out)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def _analysis_payload(kind: str, g) -> dict:
    if kind == "diameter":
        return component_diameters(g).to_dict()
    if kind == "degrees":
        return degree_statistics(g).to_dict()
    if kind == "clustering":
        return {"clustering_coefficient": clustering_coefficient(g)}
    comps = connected_components(g)
    return {
        "n_components": comps.n_components,
        "component_sizes": [int(s) for s in comps.sizes],
    }


def cmd_analyze(args) -> int:
    resolved = {
        "command": "analyze",
        "in": args.infile,
        "report": args.report,
        "out": args.out,
        "version": __version__,
    }
    _echo(resolved)
    try:
        g = read_graph_file(args.infile)
    except (OSError, ValueError) as exc:
        print(f"error: failed to read {args.infile}: {exc}", file=sys.stderr)
        return 3
    payload = {
        "report": args.report,
        "version": __version__,
        "input": args.infile,
        "meta": {k: g.meta[k] for k in sorted(g.meta)},
        "n_vertices": g.n,
        "n_edges": g.edge_count,
        "result": _analysis_payload(args.report, g),
    }
    try:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def cmd_experiment(args) -> int:
    out_dir = args.out_dir or os.environ.get("HRGSIM_OUT_DIR")
    if not out_dir:
        print("error: --out-dir required (or set HRGSIM_OUT_DIR)", file=sys.stderr)
        return 2
    args.out_dir = out_dir
    try:
        base_seed, configs = load_config_file(args.config)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return 2
    _echo(
        {
            "command": "experiment",
            "config": args.config,
            "out_dir": args.out_dir,
            "base_seed": base_seed,
            "kinds": [c.kind for c in configs],
            "threads": args.threads,
            "version": __version__,
        }
    )
    all_passed = True
    try:
        for cfg in configs:
            report = run_experiment(cfg, threads=args.threads)
            csv_path, json_path = persist_report(report, args.out_dir)
            status = "pass" if report.passed else "FAIL"
            print(f"{cfg.kind}: {status} ({csv_path}, {json_path})")
            for crit in report.criteria:
                mark = "ok" if crit["passed"] else "FAIL"
                print(f"  [{mark}] {crit['name']}: {crit['detail']}")
            all_passed &= report.passed
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0 if all_passed else 1


def cmd_verify(args) -> int:
    if args.seeds < 1:
        print("error: --seeds must be >= 1", file=sys.stderr)
        return 2
    _echo(
        {
            "command": "verify",
            "suite": args.suite,
            "n": args.n,
            "seeds": args.seeds,
            "alpha": args.alpha,
            "nu": args.nu,
            "version": __version__,
        }
    )
    try:
        result = run_suite(args.suite, args.n, args.seeds, alpha=args.alpha, nu=args.nu)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    total_violations = 0
    for name in sorted(result["checks"]):
        info = result["checks"][name]
        status = "ok" if info["violations"] == 0 else "FAIL"
        print(f"[{status}] {name}: checked {info['checked']}, violations {info['violations']}")
        total_violations += info["violations"]
    if total_violations:
        print("counterexamples:")
        for v in result["violations"][:50]:
            print(f"  {v}")
            if "seed" in v:
                print(
                    f"    reproduce: hrgsim verify --suite {args.suite} --n {args.n} "
                    f"--seeds {args.seeds} --alpha {args.alpha:g} --nu {args.nu:g} "
                    f"(instance seed {v['seed']})"
                )
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hrgsim",
        description="Hyperbolic random geometric graphs: generation, analysis, experiments.",
    )
    parser.add_argument("--version", action="version", version=f"hrgsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a graph file")
    g.add_argument("--model", choices=MODELS, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--alpha", type=float, required=True)
    g.add_argument("--nu", type=float, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--force-z", type=int, default=None, help="pin the Poisson vertex count")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", help="analyze a graph file")
    a.add_argument("--in", dest="infile", required=True)
    a.add_argument("--report", choices=REPORTS, required=True)
    a.add_argument("--out", required=True)
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("experiment", help="run experiments from a config file")
    e.add_argument("--config", required=True)
    e.add_argument("--out-dir", default=None, help="defaults to $HRGSIM_OUT_DIR")
    e.add_argument("--threads", type=int, default=1)
    e.set_defaults(func=cmd_experiment)

    v = sub.add_parser("verify", help="run invariant suites")
    v.add_argument("--suite", choices=("geometry", "boxes", "paths", "all"), required=True)
    v.add_argument("--n", type=int, default=2000)
    v.add_argument("--seeds", type=int, default=3)
    v.add_argument("--alpha", type=float, default=0.8)
    v.add_argument("--nu", type=float, default=1.3)
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
