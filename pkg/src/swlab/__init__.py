"""Navigable small-world graphs: exact hitting probabilities, balanced
shortcut distributions, destination-sampling rewiring, and a continuum
Poisson-Delaunay model, with Monte Carlo experiment harnesses."""

from .balance import (
    FixedPointReport,
    HittingProfile,
    balance_map,
    hitting_profile_cycle,
    hitting_profile_general,
    solve_balanced,
    solve_balanced_general,
    tau,
)
from .continuum import (
    CapFraction,
    ContinuumConfig,
    DelaunayGraph,
    KleinbergMeasure,
    PointSet,
    PoissonBalanceResult,
    RadialMeasure,
    augment_from_measure,
    augment_kleinberg,
    ball_volume_continuum,
    build_delaunay,
    cap_fraction,
    continuum_greedy_walk,
    estimate_hitting_measure,
    poisson_balance_iterate,
    r_max_continuum,
    sample_kleinberg_shortcuts,
    sample_points,
    sphere_measure_continuum,
    torus_metric,
)
from .harness import (
    ExperimentSpec,
    RunResult,
    emit_svg_plot,
    fit_doubling_slope,
    run_distribution_snapshot,
    run_scaling,
    write_scaling_csv,
)
from .rewiring import (
    ChainRun,
    ChainState,
    destination_sampling_step,
    run_chain,
    single_sample_step,
    stationarity_check,
)
from .routing import (
    FreshShortcuts,
    TauEstimate,
    WalkRecord,
    greedy_step,
    greedy_walk,
    mc_hitting_cycle,
    monte_carlo_tau,
)
from .shortcuts import (
    DistanceDistribution,
    ShortcutConfig,
    empirical_marginal,
    harmonic_cycle,
    harmonic_volume,
    sample_config,
    uniform_distances,
)
from .topology import (
    BallVolumeTable,
    CycleTopology,
    TorusGrid,
    ball_volume,
    base_neighbors,
    cycle_distance,
    torus_distance,
)

__version__ = "0.1.0"

__all__ = [
    "BallVolumeTable",
    "CapFraction",
    "ChainRun",
    "ChainState",
    "ContinuumConfig",
    "CycleTopology",
    "DelaunayGraph",
    "DistanceDistribution",
    "ExperimentSpec",
    "FixedPointReport",
    "FreshShortcuts",
    "HittingProfile",
    "KleinbergMeasure",
    "PointSet",
    "PoissonBalanceResult",
    "RadialMeasure",
    "RunResult",
    "ShortcutConfig",
    "TauEstimate",
    "TorusGrid",
    "WalkRecord",
    "augment_from_measure",
    "augment_kleinberg",
    "balance_map",
    "ball_volume",
    "ball_volume_continuum",
    "base_neighbors",
    "build_delaunay",
    "cap_fraction",
    "continuum_greedy_walk",
    "cycle_distance",
    "destination_sampling_step",
    "emit_svg_plot",
    "empirical_marginal",
    "estimate_hitting_measure",
    "fit_doubling_slope",
    "greedy_step",
    "greedy_walk",
    "harmonic_cycle",
    "harmonic_volume",
    "hitting_profile_cycle",
    "hitting_profile_general",
    "mc_hitting_cycle",
    "monte_carlo_tau",
    "poisson_balance_iterate",
    "r_max_continuum",
    "run_chain",
    "run_distribution_snapshot",
    "run_scaling",
    "sample_config",
    "sample_kleinberg_shortcuts",
    "sample_points",
    "single_sample_step",
    "solve_balanced",
    "solve_balanced_general",
    "sphere_measure_continuum",
    "stationarity_check",
    "tau",
    "torus_distance",
    "torus_metric",
    "uniform_distances",
    "write_scaling_csv",
]
