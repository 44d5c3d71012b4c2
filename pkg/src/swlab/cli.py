"""Command-line front end.

Subcommands mirror the library: solve the balanced fixed point, route with a
chosen shortcut model, run the rewiring chain, run scaling or distribution
experiments, and exercise the continuum model.  Every command writes CSV
files into --output-dir and prints a one-line summary.  Exit codes: 0 on
success, 1 on a domain error, 2 when a solver fails to converge.

A config file of key=value lines can supply defaults for any flags; values
given on the command line win.  Boolean keys take true or false.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

import numpy as np

from .balance import hitting_profile_cycle, solve_balanced, solve_balanced_general
from .continuum import (
    augment_kleinberg,
    build_delaunay,
    continuum_greedy_walk,
    estimate_hitting_measure,
    poisson_balance_iterate,
    sample_points,
)
from .harness import (
    ExperimentSpec,
    emit_svg_plot,
    fit_doubling_slope,
    run_distribution_snapshot,
    run_scaling,
    write_scaling_csv,
)
from .rewiring import run_chain
from .routing import monte_carlo_tau
from .shortcuts import DistanceDistribution, harmonic_cycle, harmonic_volume
from .tables import write_csv
from .topology import CycleTopology, TorusGrid

__all__ = ["main"]


def _parse_sizes(text: str) -> tuple[int, ...]:
    m = re.fullmatch(r"2\^(\d+)\.\.2\^(\d+)", text.strip())
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        if hi < lo:
            raise ValueError(f"empty size range {text!r}")
        return tuple(2**k for k in range(lo, hi + 1))
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise ValueError(f"sizes must look like 2^10..2^17 or 1024,2048, got {text!r}") from None


def _discrete_topology(kind: str, n: int) -> CycleTopology | TorusGrid:
    if kind == "cycle":
        return CycleTopology(n)
    side = int(np.sqrt(n) + 0.5)
    if side * side != n:
        raise ValueError(f"grid2d needs a perfect-square vertex count, got {n}")
    return TorusGrid(side, 2)


def _resolve_model(name: str, topology: CycleTopology | TorusGrid) -> tuple[DistanceDistribution, int]:
    """Distribution for route's --model flag; second value is the exit code."""
    if name == "harmonic":
        if isinstance(topology, CycleTopology):
            return harmonic_cycle(topology.n), 0
        return harmonic_volume(topology), 0
    if name == "balanced":
        if isinstance(topology, CycleTopology):
            report = solve_balanced(topology.n, tol=1e-10)
        else:
            report = solve_balanced_general(topology, tol=1e-10)
        return report.result, 0 if report.converged else 2
    if name.startswith("file:"):
        dist = DistanceDistribution.from_csv(name[5:])
        if dist.probs.size != topology.max_distance:
            raise ValueError(
                f"distribution covers {dist.probs.size} distances, topology has {topology.max_distance}"
            )
        return dist, 0
    raise ValueError(f"unknown model {name!r}, expected harmonic, balanced, or file:PATH")


def _cmd_solve(args: argparse.Namespace) -> int:
    report = solve_balanced(args.n, tol=args.tol, max_iters=args.max_iters, damping=args.damping)
    out = Path(args.output_dir)
    profile = hitting_profile_cycle(report.result, args.n)
    rows = [[d + 1, report.result.probs[d], profile.h[d]] for d in range(args.n - 1)]
    table = write_csv(out / f"balanced_{args.n}.csv", ["distance", "prob", "h"], rows)
    report.write_report(out / f"balanced_report_{args.n}.csv", args.n)
    state = "converged" if report.converged else "did not converge"
    print(
        f"n={args.n} {state} after {report.iterations} iterations, "
        f"tv={report.final_tv:.3e}, tau={report.tau:.12g} -> {table}"
    )
    return 0 if report.converged else 2


def _cmd_route(args: argparse.Namespace) -> int:
    topology = _discrete_topology(args.topology, args.n)
    dist, code = _resolve_model(args.model, topology)
    if code != 0:
        print("balance solver did not converge", file=sys.stderr)
        return code
    rng = np.random.Generator(np.random.PCG64(args.seed))
    est = monte_carlo_tau(topology, dist, args.walks, rng)
    out = write_csv(
        Path(args.output_dir) / "route_summary.csv",
        ["topology", "n", "model", "walks", "seed", "mean_steps", "stderr"],
        [[args.topology, args.n, args.model, args.walks, args.seed, est.mean, est.se]],
    )
    print(f"{args.walks} walks on {args.topology} n={args.n}: mean={est.mean:.6g} se={est.se:.3g} -> {out}")
    return 0


def _cmd_rewire(args: argparse.Namespace) -> int:
    topology = CycleTopology(args.n)
    run = run_chain(
        topology,
        args.p,
        args.steps,
        variant=args.variant,
        seed=args.seed,
        snapshot_every=args.snapshot_every,
    )
    out = Path(args.output_dir)
    lengths = write_csv(
        out / "rewire_lengths.csv",
        ["step", "length"],
        zip(run.length_steps.tolist(), run.lengths.tolist()),
    )
    for step, config in zip(run.snapshot_steps, run.snapshots):
        config.to_csv(out / f"rewire_snapshot_{step}.csv")
    walked = run.lengths.size
    mean = float(run.lengths.mean()) if walked else float("nan")
    print(
        f"{args.steps} steps ({args.variant}), {walked} walks, mean length {mean:.6g}, "
        f"{len(run.snapshots)} snapshots -> {lengths}"
    )
    return 0


def _cmd_experiment_scaling(args: argparse.Namespace) -> int:
    spec = ExperimentSpec(
        model=args.model,
        topology="cycle",
        sizes=_parse_sizes(args.sizes),
        p=args.p,
        walks=args.walks,
        burnin_multiplier=args.burnin_multiplier,
        seed=args.seed,
        output_dir=Path(args.output_dir),
        freeze=args.freeze,
    )
    results = run_scaling(spec)
    table = write_scaling_csv(results, spec.output_dir / "scaling.csv")
    for r in results:
        print(f"n={r.n} mean={r.mean_steps:.6g} se={r.stderr:.3g} [{r.status}]")
    try:
        print(f"doubling slope of sqrt(mean steps): {fit_doubling_slope(results):.4f}")
    except ValueError:
        pass
    if args.plot:
        svg = emit_svg_plot(table, "n", "mean_steps", spec.output_dir / "scaling.svg")
        print(f"plot -> {svg}")
    print(f"table -> {table}")
    return 0


def _cmd_experiment_distribution(args: argparse.Namespace) -> int:
    spec = ExperimentSpec(
        model="destination-sampling",
        topology="cycle",
        sizes=(args.n,),
        p=args.p,
        walks=1,
        burnin_multiplier=args.burnin_multiplier,
        seed=args.seed,
        output_dir=Path(args.output_dir),
    )
    out = run_distribution_snapshot(spec)
    print(f"shortcut distance histogram -> {out}")
    return 0


def _cmd_continuum(args: argparse.Namespace) -> int:
    out = Path(args.output_dir)
    rng = np.random.default_rng(args.seed)
    if args.model == "balance-iterate":
        result = poisson_balance_iterate(
            args.n, args.dim, iters=args.iters, walks_per_iter=args.walks, bins=args.bins, rng=rng
        )
        measure = result.measures[-1].to_csv(out / "continuum_measure.csv")
        write_csv(
            out / "continuum_tv.csv",
            ["iteration", "tv"],
            [[i + 1, tv] for i, tv in enumerate(result.tv_series.tolist())],
        )
        mean, se = float(result.mean_steps[-1]), float(result.se_steps[-1])
        write_csv(
            out / "continuum_summary.csv",
            ["dim", "n", "model", "walks", "seed", "mean_steps", "stderr"],
            [[args.dim, args.n, args.model, args.walks, args.seed, mean, se]],
        )
        print(
            f"{args.iters} balance iterations at n={args.n} dim={args.dim}: "
            f"final tv={result.tv_series[-1]:.4f}, mean steps {mean:.4g} -> {measure}"
        )
        return 0
    points = sample_points(args.n, args.dim, rng)
    graph = build_delaunay(points)
    config = augment_kleinberg(graph, rng)
    walks = []
    for _ in range(args.walks):
        dest = int(rng.integers(0, points.size))
        start = (dest + 1 + int(rng.integers(0, points.size - 1))) % points.size
        walks.append(continuum_greedy_walk(graph, config, start, dest, rng))
    lengths = np.array([w.length for w in walks], dtype=np.float64)
    mean = float(lengths.mean())
    se = 0.0 if lengths.size < 2 else float(lengths.std(ddof=1) / np.sqrt(lengths.size))
    points.to_csv(out / "continuum_points.csv")
    graph.edges_to_csv(out / "continuum_edges.csv")
    estimate_hitting_measure(walks, points, args.bins).to_csv(out / "continuum_measure.csv")
    summary = write_csv(
        out / "continuum_summary.csv",
        ["dim", "n", "model", "walks", "seed", "mean_steps", "stderr"],
        [[args.dim, args.n, args.model, args.walks, args.seed, mean, se]],
    )
    print(
        f"{args.walks} walks on {points.size} points (dim {args.dim}): "
        f"mean={mean:.6g} se={se:.3g} -> {summary}"
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swlab",
        description="Small-world navigability laboratory.",
        epilog="Any subcommand accepts --config FILE with key=value default lines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--output-dir", default=".", help="directory for CSV output")
        p.add_argument("--config", default=None, help="key=value file of flag defaults")

    p_solve = sub.add_parser("solve", help="balanced fixed point on the cycle")
    p_solve.add_argument("--n", type=int, required=True)
    p_solve.add_argument("--tol", type=float, default=1e-12)
    p_solve.add_argument("--max-iters", type=int, default=500)
    p_solve.add_argument("--damping", type=float, default=0.0)
    common(p_solve)
    p_solve.set_defaults(func=_cmd_solve)

    p_route = sub.add_parser("route", help="Monte Carlo walk lengths under a shortcut model")
    p_route.add_argument("--topology", choices=("cycle", "grid2d"), default="cycle")
    p_route.add_argument("--n", type=int, required=True)
    p_route.add_argument("--model", default="harmonic", help="harmonic, balanced, or file:PATH")
    p_route.add_argument("--walks", type=int, default=100_000)
    p_route.add_argument("--seed", type=int, default=0)
    common(p_route)
    p_route.set_defaults(func=_cmd_route)

    p_rewire = sub.add_parser("rewire", help="destination-sampling chain on the cycle")
    p_rewire.add_argument("--n", type=int, required=True)
    p_rewire.add_argument("--p", type=float, default=0.1)
    p_rewire.add_argument("--steps", type=int, required=True)
    p_rewire.add_argument("--variant", choices=("full", "single"), default="full")
    p_rewire.add_argument("--seed", type=int, default=0)
    p_rewire.add_argument("--snapshot-every", type=int, default=0)
    common(p_rewire)
    p_rewire.set_defaults(func=_cmd_rewire)

    p_exp = sub.add_parser("experiment", help="scaling and distribution protocols")
    exp_sub = p_exp.add_subparsers(dest="experiment", required=True)

    p_scal = exp_sub.add_parser("scaling", help="mean walk length across doubling sizes")
    p_scal.add_argument("--sizes", default="2^10..2^17", help="2^A..2^B or a comma list")
    p_scal.add_argument("--model", default="sampling", help="sampling, kleinberg, or balanced")
    p_scal.add_argument("--walks", type=int, default=100_000)
    p_scal.add_argument("--p", type=float, default=0.1)
    p_scal.add_argument("--burnin-multiplier", type=int, default=10)
    p_scal.add_argument("--seed", type=int, default=0)
    p_scal.add_argument("--freeze", action="store_true", help="measure on a frozen configuration")
    p_scal.add_argument("--plot", action="store_true", help="also write scaling.svg")
    common(p_scal)
    p_scal.set_defaults(func=_cmd_experiment_scaling)

    p_dist = exp_sub.add_parser("distribution", help="stationary shortcut-length histogram")
    p_dist.add_argument("--n", type=int, required=True)
    p_dist.add_argument("--p", type=float, default=0.1)
    p_dist.add_argument("--burnin-multiplier", type=int, default=10)
    p_dist.add_argument("--seed", type=int, default=0)
    common(p_dist)
    p_dist.set_defaults(func=_cmd_experiment_distribution)

    p_cont = sub.add_parser("continuum", help="Poisson-Delaunay geometry runs")
    p_cont.add_argument("--dim", type=int, choices=(1, 2), required=True)
    p_cont.add_argument("--n", type=float, required=True, help="intensity scale; expect about n^dim points")
    p_cont.add_argument("--model", choices=("kleinberg", "balance-iterate"), default="kleinberg")
    p_cont.add_argument("--walks", type=int, default=1000)
    p_cont.add_argument("--iters", type=int, default=4)
    p_cont.add_argument("--bins", type=int, default=64)
    p_cont.add_argument("--seed", type=int, default=0)
    common(p_cont)
    p_cont.set_defaults(func=_cmd_continuum)

    return parser


def _apply_config(argv: list[str]) -> list[str]:
    """Splice config-file defaults in ahead of explicit flags."""
    argv = list(argv)
    path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
            del argv[i : i + 2]
            break
        if tok.startswith("--config="):
            path = tok.split("=", 1)[1]
            del argv[i]
            break
    if path is None:
        return argv
    tokens: list[str] = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {line!r} is not key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        flag = "--" + key.replace("_", "-")
        if value.lower() in ("true", "false"):
            if value.lower() == "true":
                tokens.append(flag)
        else:
            tokens.extend([flag, value])
    insert_at = 1
    if argv and argv[0] == "experiment" and len(argv) > 1:
        insert_at = 2
    return argv[:insert_at] + tokens + argv[insert_at:]


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        argv = _apply_config(argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
