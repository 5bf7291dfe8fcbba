"""Command-line front end: ``qwcentrality {centrality,ensemble,compile,experiment}``.

Exit codes: 0 success, 2 input error, 3 numerical-precondition failure,
4 internal error. Every report embeds the resolved configuration and seed.
Ensemble parallelism is capped by the ``QC_THREADS`` environment variable and
never changes the output.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .appendix import verify_appendix_factors
from .csd import csd, csd_recursive, unitarity_residual
from .ctqw import star_propagator_closed_form
from .errors import NumericalPreconditionError
from .experiment import DEFAULT_SHOTS, DELTA_T, run_experiment_simulation
from .graphs import GraphEnsembleSpec
from .io import read_graph, result_to_csv
from .measures import MEASURES, TABLE1_MEASURES, canonical_name, compute_all
from .stats import COMPARE_MODES, correlation_table, run_ensemble

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_INTERNAL = 0, 2, 3, 4

PRESETS = {
    "paper-table1": {
        "families": [{"kind": "erdos_renyi", "n": 20, "p": 0.3, "count": 100}],
        "measures": list(TABLE1_MEASURES),
        "pairs": None,
        "n_values": [1, 2, 3, 4, 5],
        "compare": "ranked_lists",
    },
    "paper-fig3": {
        "families": [{"kind": "erdos_renyi", "n": 100, "p": 0.3, "count": 200},
                     {"kind": "barabasi_albert", "n": 100, "m": 2, "count": 200}],
        "measures": ["pagerank", "eigenvector", "ctqw"],
        "pairs": [["eigenvector", "ctqw"], ["pagerank", "ctqw"]],
        "n_values": [1, 2, 3, 4, 5],
        "compare": "scores",
    },
    "paper-fig4": {
        "families": [{"kind": "erdos_renyi", "n": 100, "p": 0.3, "count": 100},
                     {"kind": "barabasi_albert", "n": 100, "m": 2, "count": 100}],
        "measures": ["pagerank", "eigenvector", "ctqw"],
        "pairs": [["eigenvector", "ctqw"], ["pagerank", "ctqw"]],
        "n_values": [1, 2, 3, 4, 5],
        "compare": "scores",
    },
}

EXPERIMENT_PRESETS = {
    "paper-fig7": {"steps": 8, "delta_t": DELTA_T, "shots": DEFAULT_SHOTS},
}


def _resolve_seed(seed):
    if seed is not None:
        return int(seed)
    drawn = int(np.random.SeedSequence().entropy % (2 ** 63))
    print(f"seed: {drawn}", file=sys.stderr)
    return drawn


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("QC_THREADS", "1")))
    except ValueError:
        return 1


def _write(outdir: Path, name: str, text: str) -> Path:
    path = outdir / name
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _family_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1, dtype=np.uint64)[0])


def _measure_list(text: str) -> list[str]:
    if text == "all":
        return list(TABLE1_MEASURES)
    return [canonical_name(m) for m in text.split(",") if m.strip()]


def cmd_centrality(args) -> int:
    g = read_graph(args.graph)
    names = _measure_list(args.measures)
    params = {"alpha": args.alpha, "epsilon": args.epsilon}
    results = compute_all(names, g, **params)
    config = {"command": "centrality", "graph": str(args.graph), "measures": names,
              "alpha": args.alpha, "epsilon": args.epsilon, "compare": args.compare, "format": args.format}
    corr = correlation_table(g, names, compare=args.compare, **params) if len(names) > 1 else None
    if args.format == "json":
        report = {"config": config, "results": [r.to_dict() for r in results.values()],
                  "correlation": corr.to_dict() if corr else None}
        _write(args.out, "centrality.json", _dump(report))
    else:
        for name, r in results.items():
            _write(args.out, f"centrality_{name}.csv", result_to_csv(r))
        if corr is not None:
            rows = ["measure," + ",".join(corr.measures)]
            rows += [m + "," + ",".join(repr(float(x)) for x in row) for m, row in zip(corr.measures, corr.tau)]
            _write(args.out, "correlation.csv", "\n".join(rows) + "\n")
        _write(args.out, "config.json", _dump(config))
    for name, r in results.items():
        print(f"{name:12s} " + " ".join(f"{s:.4f}" for s in r.scores))
    return EXIT_OK


def _ensemble_plan(args):
    if args.preset:
        plan = json.loads(json.dumps(PRESETS[args.preset]))
        if args.count is not None:
            for fam in plan["families"]:
                fam["count"] = args.count
        return plan
    if args.kind is None:
        raise ValueError("either --preset or --kind is required")
    fam = {"kind": {"er": "erdos_renyi", "ba": "barabasi_albert"}.get(args.kind, args.kind),
           "n": args.n, "count": args.count or 100}
    if fam["kind"] == "erdos_renyi":
        fam["p"] = args.p
    else:
        fam["m"] = args.m
    return {"families": [fam], "measures": _measure_list(args.measures), "pairs": None,
            "n_values": [int(x) for x in args.n_values.split(",")], "compare": args.compare}


def cmd_ensemble(args) -> int:
    seed = _resolve_seed(args.seed)
    plan = _ensemble_plan(args)
    config = {"command": "ensemble", "preset": args.preset, "seed": seed,
              "alpha": args.alpha, "epsilon": args.epsilon, **plan}
    families = {}
    for idx, fam in enumerate(plan["families"]):
        spec = GraphEnsembleSpec(seed=_family_seed(seed, idx), **fam)
        report = run_ensemble(spec, plan["measures"], plan["n_values"], pairs=plan["pairs"],
                              threads=_threads(), compare=plan["compare"],
                              alpha=args.alpha, epsilon=args.epsilon)
        families[spec.kind] = report
        _write(args.out, f"{spec.kind}_profile.csv", report.profile_csv())
        _write(args.out, f"{spec.kind}_agreement.csv", report.agreement_csv())
        print(f"{spec.describe()} x {spec.count}:")
        for pair, n, f, lo, hi in report.agreement.rows():
            print(f"  top-{n} {pair:24s} {f:.3f}  [{lo:.3f}, {hi:.3f}]")
    out = {"config": config, "families": {k: r.to_dict() for k, r in families.items()}}
    _write(args.out, "ensemble.json", _dump(out))
    return EXIT_OK


def _load_matrix(path) -> np.ndarray:
    d = json.loads(Path(path).read_text(encoding="utf-8"))
    rows = d["matrix"] if isinstance(d, dict) else d
    try:
        return np.array([[complex(*z) if isinstance(z, list) else complex(z) for z in row] for row in rows])
    except (TypeError, ValueError) as exc:
        raise ValueError(f"matrix entries must be numbers or [re, im] pairs: {exc}") from None


def cmd_compile(args) -> int:
    config = {"command": "compile"}
    report = {"config": config}
    if args.matrix is not None or args.star4:
        if args.matrix is not None:
            U = _load_matrix(args.matrix)
            config["matrix"] = str(args.matrix)
        else:
            U = star_propagator_closed_form(args.k * args.delta_t)
            config.update(star4=True, k=args.k, delta_t=args.delta_t)
        if U.shape[0] > 4:
            tree = csd_recursive(U)
            report["recursive"] = True
            report["factorization"] = tree.factorization.to_dict()
            report["thetas_all"] = tree.all_thetas().tolist()
            report["residual"] = float(np.linalg.norm(tree.reconstruct() - U))
        else:
            f = csd(U)
            report["factorization"] = f.to_dict()
            report["residual"] = f.residual(U)
            print(f.circuit_listing())
        report["unitarity_residual"] = unitarity_residual(U)
        print(f"reconstruction residual: {report['residual']:.3e}")
    if args.verify_appendix:
        config["verify_appendix"] = True
        records = [verify_appendix_factors(k) for k in range(1, 9)]
        report["appendix"] = [r.to_dict() for r in records]
        for r in records:
            print(f"k={r.k}: theta={r.theta:.6f} residual={r.residual:.2e} "
                  f"{'ok' if r.passed else 'MISMATCH'}")
    if len(report) == 1:
        raise ValueError("nothing to do: give --matrix, --star4 or --verify-appendix")
    _write(args.out, "factorization.json", _dump(report))
    return EXIT_OK


def cmd_experiment(args) -> int:
    if args.preset:
        for key, value in EXPERIMENT_PRESETS[args.preset].items():
            setattr(args, key, value)
    seed = None if args.analytic else _resolve_seed(args.seed)
    run = run_experiment_simulation(steps=args.steps, delta_t=args.delta_t, shots_per_step=args.shots,
                                    seed=seed, analytic=args.analytic, route_csd=args.route_csd)
    config = {"command": "experiment", "preset": args.preset, "steps": args.steps, "delta_t": args.delta_t, "shots": args.shots,
              "seed": seed, "analytic": args.analytic, "route_csd": args.route_csd, "format": args.format}
    if args.format == "json":
        _write(args.out, "experiment.json", _dump({"config": config, **run.to_dict()}))
    else:
        _write(args.out, "experiment.csv", run.to_csv())
        _write(args.out, "config.json", _dump(config))
    for r in run.records:
        print(f"k={r.k}: d={r.distance:.4f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qwcentrality", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", type=Path, default=Path("."), help="output directory (default: cwd)")

    c = sub.add_parser("centrality", help="score one graph with several measures")
    c.add_argument("graph", type=Path, help="edge-list or .json graph file")
    c.add_argument("--measures", default="all", help=f"comma list from {sorted(MEASURES)} or 'all'")
    c.add_argument("--alpha", type=float, default=0.85)
    c.add_argument("--epsilon", type=float, default=0.5)
    c.add_argument("--compare", choices=COMPARE_MODES, default="scores")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    common(c)
    c.set_defaults(func=cmd_centrality)

    e = sub.add_parser("ensemble", help="random-graph ensemble statistics")
    e.add_argument("--preset", choices=sorted(PRESETS))
    e.add_argument("--kind", choices=("er", "ba", "erdos_renyi", "barabasi_albert"))
    e.add_argument("--n", type=int, default=20)
    e.add_argument("--p", type=float, default=0.3)
    e.add_argument("--m", type=int, default=2)
    e.add_argument("--count", type=int)
    e.add_argument("--measures", default="all")
    e.add_argument("--n-values", default="1,2,3,4,5")
    e.add_argument("--compare", choices=COMPARE_MODES, default="scores")
    e.add_argument("--alpha", type=float, default=0.85)
    e.add_argument("--epsilon", type=float, default=0.5)
    e.add_argument("--seed", type=int)
    common(e)
    e.set_defaults(func=cmd_ensemble)

    k = sub.add_parser("compile", help="cosine-sine decomposition of a unitary")
    k.add_argument("--matrix", type=Path, help="JSON matrix, entries as numbers or [re, im]")
    k.add_argument("--star4", action="store_true", help="use the 4-star propagator U(k*dt)")
    k.add_argument("--k", type=int, default=1)
    k.add_argument("--delta-t", type=float, default=DELTA_T)
    k.add_argument("--verify-appendix", action="store_true")
    common(k)
    k.set_defaults(func=cmd_compile)

    x = sub.add_parser("experiment", help="finite-shot measurement simulation")
    x.add_argument("--preset", choices=sorted(EXPERIMENT_PRESETS), help="overrides --steps, --delta-t, --shots")
    x.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    x.add_argument("--steps", type=int, default=8)
    x.add_argument("--delta-t", type=float, default=DELTA_T)
    x.add_argument("--seed", type=int)
    x.add_argument("--analytic", action="store_true")
    x.add_argument("--route-csd", action="store_true")
    x.add_argument("--format", choices=("json", "csv"), default="json")
    common(x)
    x.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.out.mkdir(parents=True, exist_ok=True)
        return args.func(args)
    except NumericalPreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
