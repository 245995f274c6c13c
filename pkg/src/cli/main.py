#!/usr/bin/env python3
"""
Clustered Cascades Command-Line Interface.

Front end for distribution construction, clustering tuning, asymptotic
analysis, graph generation, Monte Carlo campaigns and experiment presets.

Commands:
    dist: Describe a degree law and optionally write its table
    tune: Find (p, gamma) for a target degree law and clustering
    analyze: Asymptotic diffusion / contagion / activation results
    gen: Sample one clique-substituted graph
    simulate: Monte Carlo campaigns for diffusion or contagion
    experiment: Run a named preset sweep
    list-experiments: Show the presets

Usage Examples:
    # Diffusion threshold of random 3-regular graphs
    python -m src.cli.main analyze diffusion --dist regular:3 --gamma 0

    # Tune a power law to clustering 0.1
    python -m src.cli.main tune --dist powerlaw:tau=2.5,kappa=50 --C 0.1 --out results/p.txt

    # Cascade sizes for q = 0.15
    python -m src.cli.main analyze contagion --dist poisson:lambda=3 --gamma 0.2 --q 0.15

    # Simulate diffusion from a spec file, overriding the seed
    python -m src.cli.main simulate diffusion --spec configs/experiments/diffusion.yaml --seed 7

    # Figure data with Monte Carlo overlays
    python -m src.cli.main experiment fig_cascade_sizes --simulate --n 20000 --replicas 10

Exit codes:
    0 success, 2 invalid parameters, 3 numeric or solver failure
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

# Add project root to Python path for standalone execution
ROOT = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(ROOT))

from pydantic import ValidationError

from src import __version__
from src.cli.experiments import PRESETS, ExperimentContext, run_experiment
from src.cli.parsing import parse_distribution_spec
from src.cli.reports import print_rows, summary_rows, write_csv
from src.cli.specs import (
    ExperimentSpec,
    ResolvedModel,
    build_spec,
    load_spec_file,
    resolve_alpha,
    resolve_model,
    threshold_laws,
)
from src.dist.io import write_distribution
from src.graphgen.graph import write_graph
from src.graphgen.pipeline import generate_clustered_graph
from src.graphgen.stats import empirical_clustering, empirical_degree_hist
from src.perc.diffusion import (
    diffusion_activation_fraction,
    diffusion_giant_fraction,
    diffusion_pi_c,
    offspring_mean,
)
from src.sim.monte_carlo import (
    simulate_activation_cascade,
    simulate_activation_diffusion,
    simulate_cascade,
    simulate_diffusion,
)
from src.thresh.cascade import activation_cascade_fraction, contagion_report
from src.tuner.forward import clustering_coefficient, gamma_tilde, tilde_distribution
from src.tuner.tune import tune, tune_biased
from src.utils.config import AppConfig, load_config
from src.utils.errors import CascadesError, ParameterError
from src.utils.logging import setup_logging
from src.utils.validation import validate_config

logger = logging.getLogger(__name__)

# Keys that only matter for simulations
_SIMULATION_KEYS = ("n", "replicas", "base_seed", "simple_policy", "max_tries")


def _banner(title: str) -> None:
    print("=" * 70)
    print(title)
    print("=" * 70)
    print()


def _numerics(cfg: AppConfig) -> Dict[str, Any]:
    return {
        "grid_points": cfg.numerics.root_grid_points,
        "xtol": cfg.numerics.root_xtol,
        "eps": cfg.numerics.regularity_eps,
    }


def _spec_from_args(args, cfg: AppConfig, process: Optional[str]) -> ExperimentSpec:
    """Config defaults, then the --spec file, then explicit flags (None keeps the file value)."""
    values: Dict[str, Any] = {
        "n": cfg.simulation.n,
        "replicas": cfg.simulation.replicas,
        "base_seed": cfg.simulation.base_seed,
        "simple_policy": cfg.simulation.simple_policy,
        "max_tries": cfg.simulation.max_tries,
    }
    if getattr(args, "spec", None):
        values.update(load_spec_file(Path(args.spec)))
    overrides = {
        "name": getattr(args, "name", None),
        "dist": getattr(args, "dist", None),
        "gamma": getattr(args, "gamma", None),
        "C": getattr(args, "C", None),
        "process": process,
        "pi": getattr(args, "pi", None),
        "q": getattr(args, "q", None),
        "thresholds": getattr(args, "thresholds", None),
        "alpha": getattr(args, "alpha", None),
        "n": getattr(args, "n", None),
        "replicas": getattr(args, "replicas", None),
        "base_seed": getattr(args, "seed", None),
        "simple_policy": getattr(args, "policy", None),
        "max_tries": getattr(args, "max_tries", None),
        "output": getattr(args, "out", None),
    }
    return build_spec(values, overrides)


def _output_path(spec: ExperimentSpec, cfg: AppConfig, suffix: str) -> Path:
    if spec.output:
        return Path(spec.output)
    return Path(cfg.output.output_dir) / f"{spec.name}_{suffix}.csv"


def _analytic_metadata(spec: ExperimentSpec, model_meta: Dict[str, Any]) -> Dict[str, Any]:
    meta = {k: v for k, v in spec.metadata().items() if k not in _SIMULATION_KEYS and k != "output"}
    meta.update(model_meta)
    return meta


# ============================================================================
# Commands
# ============================================================================

def cmd_dist(args, cfg: AppConfig) -> int:
    """
    Describe a degree distribution.

    Args:
        args: Parsed arguments (dist, out)
        cfg: Resolved configuration

    Returns:
        Exit code
    """
    _banner("DEGREE DISTRIBUTION")
    dist = parse_distribution_spec(args.dist, max_tail=cfg.numerics.truncation_tail)
    print(f"Name: {dist.name}")
    print(f"Support: 0..{dist.support_max}")
    print(f"Mean: {dist.mean:.10g}")
    print(f"E[D(D-1)]: {dist.factorial_moment(2):.10g}")
    print(f"Dropped tail: {dist.tail_mass_dropped:.3g}")
    if args.out:
        path = write_distribution(dist, Path(args.out), {"version": __version__, "spec": args.dist})
        print(f"\n✅ Table written to {path}")
    return 0


def cmd_tune(args, cfg: AppConfig) -> int:
    """Tune (p, gamma) to a target law and clustering."""
    _banner("CLUSTERING TUNER")
    p_tilde = parse_distribution_spec(args.dist, max_tail=cfg.numerics.truncation_tail)
    result = tune(p_tilde, args.C) if args.C is not None else tune_biased(p_tilde, args.C2)

    print(f"Target law: {p_tilde.name} (mean {p_tilde.mean:.6g})")
    print(f"Clustering ({result.kind}): target {result.target_c:.10g}, achieved {result.achieved_c:.10g}")
    print(f"gamma: {result.gamma:.12g}")
    print(f"lambda: {result.lam:.12g}")
    if args.out:
        meta = {"version": __version__, "target": args.dist, **result.to_row()}
        path = write_distribution(result.p, Path(args.out), meta)
        print(f"\n✅ Pre-substitution law written to {path}")
    return 0


def _analyze_diffusion(spec: ExperimentSpec, model: ResolvedModel, cfg: AppConfig) -> List[Dict[str, Any]]:
    threshold = diffusion_pi_c(
        model.p, model.gamma, xtol=cfg.numerics.threshold_xtol, check_monotone=cfg.numerics.debug_monotone
    )
    base = {
        "C": clustering_coefficient(model.p, model.gamma),
        "pi_c": threshold.pi_c,
        "finite_threshold": threshold.finite,
        "offspring_mean_at_pi_c": offspring_mean(model.p, model.gamma, threshold.pi_c),
    }
    if not spec.pi:
        return [base]
    rows = []
    for pi in spec.pi:
        report = diffusion_giant_fraction(model.p, model.gamma, pi, threshold=threshold, **_numerics(cfg))
        rows.append({**base, **report.to_row()})
    return rows


def _analyze_contagion(spec: ExperimentSpec, model: ResolvedModel, cfg: AppConfig) -> List[Dict[str, Any]]:
    rows = []
    for q, t in threshold_laws(spec, model.p.support_max):
        report = contagion_report(model.p, model.gamma, t, q=q, **_numerics(cfg))
        rows.append({"q": "" if q is None else q, "thresholds": t.name, **report.to_row()})
    return rows


def _analyze_activation(spec: ExperimentSpec, model: ResolvedModel, cfg: AppConfig) -> List[Dict[str, Any]]:
    alpha = resolve_alpha(spec.alpha)
    if alpha is None:
        raise ParameterError("analyze activation needs --alpha")
    rows = []
    if spec.process == "diffusion":
        if not spec.pi:
            raise ParameterError("Activation diffusion needs --pi")
        for pi in spec.pi:
            report = diffusion_activation_fraction(model.p, model.gamma, pi, alpha, **_numerics(cfg))
            rows.append({"alpha": alpha.describe(), **report.to_row()})
    else:
        for q, t in threshold_laws(spec, model.p.support_max):
            point = activation_cascade_fraction(model.p, model.gamma, t, alpha, **_numerics(cfg))
            rows.append({
                "alpha": alpha.describe(),
                "q": "" if q is None else q,
                "thresholds": t.name,
                "zeta": point.zeta,
                "active_fraction": point.fraction,
                "regularity_ok": point.regularity_ok,
            })
    return rows


def cmd_analyze(args, cfg: AppConfig) -> int:
    """
    Asymptotic results for one ensemble.

    Args:
        args: Parsed arguments (kind plus spec flags)
        cfg: Resolved configuration

    Returns:
        Exit code
    """
    kind = args.kind
    if kind == "activation":
        process = "contagion" if (args.q or args.thresholds) else None
    else:
        process = kind
    spec = _spec_from_args(args, cfg, process)
    _banner(f"ANALYZE {kind.upper()}")

    handlers = {
        "diffusion": _analyze_diffusion,
        "contagion": _analyze_contagion,
        "activation": _analyze_activation,
    }
    model = resolve_model(spec.dist, spec.gamma, spec.C, cfg.numerics.truncation_tail)
    rows = handlers[kind](spec, model, cfg)
    meta = _analytic_metadata(spec, model.metadata())

    columns = [c for c in ("pi", "q", "pi_c", "giant_fraction", "pivotal_fraction",
                           "cascade_fraction", "active_fraction") if c in rows[0]]
    print_rows(rows, columns)
    path = write_csv(_output_path(spec, cfg, f"analyze_{kind}"), rows, meta)
    print(f"\n✅ Results written to {path}")
    return 0


def cmd_gen(args, cfg: AppConfig) -> int:
    """Sample one clique-substituted graph and write its edge list."""
    spec = _spec_from_args(args, cfg, "diffusion")
    _banner("GENERATE GRAPH")
    model = resolve_model(spec.dist, spec.gamma, spec.C, cfg.numerics.truncation_tail)
    g = generate_clustered_graph(
        model.p, model.gamma, spec.n, spec.base_seed,
        simple_policy=spec.simple_policy, max_tries=spec.max_tries,
    )

    print(f"Original vertices: {spec.n}")
    print(f"Vertices after substitution: {g.n_vertices} (expected ~{spec.n * gamma_tilde(model.p, model.gamma):.0f})")
    print(f"Edges: {g.n_edges} ({int(g.internal.sum())} internal)")
    print(f"Loops: {g.loop_count()}, parallel edges: {g.multi_edge_count()}")
    if g.n_edges:
        hist = empirical_degree_hist(g)
        print(f"Mean degree: {hist.mean:.6g} (asymptotic {tilde_distribution(model.p, model.gamma).mean:.6g})")
    if g.is_simple() and g.n_edges:
        stats = empirical_clustering(g)
        print(f"Clustering: C={stats.c:.6f} (asymptotic {clustering_coefficient(model.p, model.gamma):.6f}), "
              f"C2={stats.c2:.6f}")

    out = Path(spec.output) if spec.output else Path(cfg.output.output_dir) / f"{spec.name}_graph.txt"
    path = write_graph(g, out)
    print(f"\n✅ Graph written to {path}")
    return 0


def cmd_simulate(args, cfg: AppConfig) -> int:
    """
    Monte Carlo campaign for diffusion or contagion.

    Args:
        args: Parsed arguments (kind plus spec flags)
        cfg: Resolved configuration

    Returns:
        Exit code
    """
    spec = _spec_from_args(args, cfg, args.kind)
    _banner(f"SIMULATE {args.kind.upper()}")
    model = resolve_model(spec.dist, spec.gamma, spec.C, cfg.numerics.truncation_tail)
    alpha = resolve_alpha(spec.alpha)
    plan = {"n": spec.n, "replicas": spec.replicas, "simple_policy": spec.simple_policy,
            "max_tries": spec.max_tries}

    rows: List[Dict[str, Any]] = []
    if spec.process == "diffusion":
        if not spec.pi:
            raise ParameterError("simulate diffusion needs --pi")
        for pi in spec.pi:
            if alpha is None:
                summary = simulate_diffusion(model.p, model.gamma, pi, base_seed=spec.base_seed, **plan)
            else:
                summary = simulate_activation_diffusion(
                    model.p, model.gamma, pi, alpha, base_seed=spec.base_seed, **plan
                )
            rows.extend(summary_rows(summary, spec.base_seed, {"pi": pi}))
    else:
        for q, t in threshold_laws(spec, model.p.support_max):
            if alpha is None:
                summary = simulate_cascade(model.p, model.gamma, t, base_seed=spec.base_seed, **plan)
            else:
                summary = simulate_activation_cascade(
                    model.p, model.gamma, t, alpha, base_seed=spec.base_seed, **plan
                )
            rows.extend(summary_rows(summary, spec.base_seed, {"q": "" if q is None else q, "thresholds": t.name}))

    print_rows(rows, ["metric", "mean", "ci_lo", "ci_hi"])
    meta = {**spec.metadata(), **model.metadata()}
    meta.pop("output", None)
    path = write_csv(_output_path(spec, cfg, f"simulate_{args.kind}"), rows, meta)
    print(f"\n✅ Results written to {path}")
    return 0


def cmd_experiment(args, cfg: AppConfig) -> int:
    """Run a preset and write its CSV bundle."""
    _banner(f"EXPERIMENT {args.name}")
    ctx = ExperimentContext(
        simulate=args.simulate,
        n=args.n if args.n is not None else cfg.simulation.n,
        replicas=args.replicas if args.replicas is not None else cfg.simulation.replicas,
        base_seed=args.seed if args.seed is not None else cfg.simulation.base_seed,
        simple_policy=cfg.simulation.simple_policy,
        max_tries=cfg.simulation.max_tries,
        grid_points=cfg.numerics.root_grid_points,
        xtol=cfg.numerics.root_xtol,
        eps=cfg.numerics.regularity_eps,
        threshold_xtol=cfg.numerics.threshold_xtol,
        debug_monotone=cfg.numerics.debug_monotone,
        kappa=cfg.simulation.kappa,
        r_max=cfg.simulation.r_max,
    )
    out_dir = Path(args.out_dir or cfg.output.output_dir)
    for table in run_experiment(args.name, ctx):
        path = write_csv(out_dir / table.filename, table.rows, table.metadata, table.fieldnames)
        print(f"✅ {len(table.rows)} rows -> {path}")
    return 0


def cmd_list_experiments(args, cfg: AppConfig) -> int:
    """Print the experiment presets."""
    _banner("EXPERIMENT PRESETS")
    for preset in PRESETS.values():
        print(f"  {preset.name:<22} {preset.description}")
    return 0


# ============================================================================
# Argument parsing
# ============================================================================

def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", type=str, help="YAML experiment spec (flags override its keys)")
    p.add_argument("--name", type=str, help="Run label used in output names")
    p.add_argument("--dist", type=str, help="Degree law, e.g. regular:3 or powerlaw:tau=2.5,kappa=50")
    clustering = p.add_mutually_exclusive_group()
    clustering.add_argument("--gamma", type=str, help="Substitution profile: 0.2 or 3=0.5,4=1")
    clustering.add_argument("--C", type=float, help="Target global clustering (tunes the law)")
    p.add_argument("--out", type=str, help="Output file")


def _add_process_flags(p: argparse.ArgumentParser, diffusion: bool, contagion: bool) -> None:
    if diffusion:
        p.add_argument("--pi", type=float, nargs="+", help="Transmission probabilities")
    if contagion:
        thresholds = p.add_mutually_exclusive_group()
        thresholds.add_argument("--q", type=float, nargs="+", help="Contagion parameters")
        thresholds.add_argument("--thresholds", type=str, help="contagion:q=..., constant:k=... or zero")


def _add_simulation_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="Vertices before substitution")
    p.add_argument("--replicas", type=int, help="Monte Carlo replicas")
    p.add_argument("--seed", type=int, help="Base seed")
    p.add_argument("--policy", type=str, choices=["multigraph", "erase", "reject"], help="Simple-graph policy")
    p.add_argument("--max-tries", type=int, help="Reject-policy attempt budget")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Clustered cascades - diffusion and contagion on random graphs with clustering"
    )
    parser.add_argument("--config", type=str, help="Alternative configuration YAML")
    parser.add_argument("--log-level", type=str, help="Override the configured log level")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    # dist command
    p_dist = subparsers.add_parser("dist", help="Describe a degree law")
    p_dist.add_argument("--dist", type=str, required=True, help="Degree law")
    p_dist.add_argument("--out", type=str, help="Write the 'r p_r' table here")

    # tune command
    p_tune = subparsers.add_parser("tune", help="Tune (p, gamma) to a target law and clustering")
    p_tune.add_argument("--dist", type=str, required=True, help="Target degree law of the substituted graph")
    target = p_tune.add_mutually_exclusive_group(required=True)
    target.add_argument("--C", type=float, help="Target global clustering")
    target.add_argument("--C2", type=float, help="Target average local clustering")
    p_tune.add_argument("--out", type=str, help="Write the pre-substitution law here")

    # analyze command
    p_analyze = subparsers.add_parser("analyze", help="Asymptotic results")
    analyze_kinds = p_analyze.add_subparsers(dest="kind", required=True)
    p_a_diff = analyze_kinds.add_parser("diffusion", help="Diffusion threshold and giant share")
    _add_model_flags(p_a_diff)
    _add_process_flags(p_a_diff, diffusion=True, contagion=False)
    p_a_cont = analyze_kinds.add_parser("contagion", help="Cascade condition, pivotal and cascade shares")
    _add_model_flags(p_a_cont)
    _add_process_flags(p_a_cont, diffusion=False, contagion=True)
    p_a_act = analyze_kinds.add_parser("activation", help="Seeded diffusion or cascade")
    _add_model_flags(p_a_act)
    _add_process_flags(p_a_act, diffusion=True, contagion=True)
    p_a_act.add_argument("--alpha", type=str, help="Seeding profile: 0.05 or 3=0.1,4=0")

    # gen command
    p_gen = subparsers.add_parser("gen", help="Sample one clique-substituted graph")
    _add_model_flags(p_gen)
    _add_simulation_flags(p_gen)

    # simulate command
    p_sim = subparsers.add_parser("simulate", help="Monte Carlo campaigns")
    sim_kinds = p_sim.add_subparsers(dest="kind", required=True)
    p_s_diff = sim_kinds.add_parser("diffusion", help="Percolation clusters or seeded diffusion")
    p_s_cont = sim_kinds.add_parser("contagion", help="Pivotal set and cascades")
    for p_sub, diffusion in ((p_s_diff, True), (p_s_cont, False)):
        _add_model_flags(p_sub)
        _add_process_flags(p_sub, diffusion=diffusion, contagion=not diffusion)
        _add_simulation_flags(p_sub)
        p_sub.add_argument("--alpha", type=str, help="Seeding profile for the activation variant")

    # experiment command
    p_exp = subparsers.add_parser("experiment", help="Run a named preset")
    p_exp.add_argument("name", type=str, choices=sorted(PRESETS), help="Preset name")
    p_exp.add_argument("--simulate", action="store_true", help="Add Monte Carlo overlays")
    p_exp.add_argument("--out-dir", type=str, help="Output directory")
    p_exp.add_argument("--n", type=int, help="Vertices before substitution")
    p_exp.add_argument("--replicas", type=int, help="Monte Carlo replicas")
    p_exp.add_argument("--seed", type=int, help="Base seed")

    # list-experiments command
    subparsers.add_parser("list-experiments", help="Show the experiment presets")

    return parser


def _format_validation(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        key = ".".join(str(x) for x in item.get("loc", ())) or "spec"
        parts.append(f"{key}: {item.get('msg')}")
    return "; ".join(parts)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main CLI entry point.

    Parses command-line arguments and routes to the command handler; library
    errors become exit codes.

    Returns:
        Exit code from command handler
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    # Show help if no command provided
    if not args.command:
        parser.print_help()
        return 1

    cfg = load_config(Path(args.config) if args.config else None)
    setup_logging(args.log_level or cfg.output.log_level, cfg.output.log_file)
    is_valid, errors = validate_config(cfg)
    if not is_valid:
        for error in errors:
            print(f"❌ {error}")
        return ParameterError.exit_code

    # Route to command handler
    commands = {
        "dist": cmd_dist,
        "tune": cmd_tune,
        "analyze": cmd_analyze,
        "gen": cmd_gen,
        "simulate": cmd_simulate,
        "experiment": cmd_experiment,
        "list-experiments": cmd_list_experiments,
    }

    try:
        return commands[args.command](args, cfg)
    except ValidationError as e:
        print(f"❌ Invalid parameters: {_format_validation(e)}")
        return ParameterError.exit_code
    except CascadesError as e:
        print(f"❌ {type(e).__name__}: {e}")
        logger.debug("Command %s failed", args.command, exc_info=True)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
