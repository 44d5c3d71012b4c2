"""Experiment orchestration: scaling runs, distribution snapshots, CSV and SVG output.

A run is described by an ExperimentSpec and produces one RunResult per
graph size.  Under the destination-sampling model each size starts from an
empty configuration, burns in for a multiple of n chain steps, and then
measures the same walks that keep updating the graph.  The other models
measure walks over fresh shortcut configurations drawn per walk.

Everything is deterministic given the spec seed: sizes use seed xor index,
and wall-clock timings never reach the CSV output.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import isqrt
from pathlib import Path

import numpy as np

from .balance import solve_balanced, solve_balanced_general
from .continuum import augment_kleinberg, build_delaunay, continuum_greedy_walk, poisson_balance_iterate, sample_points
from .rewiring import ChainState, run_chain
from .routing import monte_carlo_tau
from .shortcuts import harmonic_cycle, harmonic_volume
from .tables import read_csv, write_csv
from .topology import CycleTopology, TorusGrid

__all__ = [
    "ExperimentSpec",
    "RunResult",
    "run_scaling",
    "fit_doubling_slope",
    "run_distribution_snapshot",
    "write_scaling_csv",
    "emit_svg_plot",
    "canonical_model",
]

MODELS = (
    "kleinberg-harmonic",
    "balanced-solved",
    "destination-sampling",
    "continuum-kleinberg",
    "continuum-balanced",
)
TOPOLOGIES = ("cycle", "grid2d", "continuum1d", "continuum2d")

_ALIASES = {
    "kleinberg": "kleinberg-harmonic",
    "harmonic": "kleinberg-harmonic",
    "balanced": "balanced-solved",
    "sampling": "destination-sampling",
    "balance-iterate": "continuum-balanced",
}

CONTINUUM_REPLICATES = 8
SNAPSHOT_COUNT = 40
DISTRIBUTION_BINS = 256


def canonical_model(name: str) -> str:
    """Map command-line model spellings onto the canonical names."""
    model = _ALIASES.get(name, name)
    if model not in MODELS:
        raise ValueError(f"unknown model {name!r}")
    return model


@dataclass(frozen=True)
class ExperimentSpec:
    """One scaling or distribution experiment over a list of graph sizes."""

    model: str
    topology: str
    sizes: tuple[int, ...]
    p: float = 0.1
    walks: int = 100_000
    burnin_multiplier: int = 10
    seed: int = 0
    output_dir: Path = Path(".")
    freeze: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "model", canonical_model(self.model))
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        if self.topology not in TOPOLOGIES:
            raise ValueError(f"unknown topology {self.topology!r}")
        continuum_model = self.model.startswith("continuum")
        continuum_topology = self.topology.startswith("continuum")
        if continuum_model != continuum_topology:
            raise ValueError(f"model {self.model} does not run on topology {self.topology}")
        if not self.sizes:
            raise ValueError("sizes must be nonempty")
        if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError("sizes must be strictly increasing")
        if min(self.sizes) < 2:
            raise ValueError("sizes must be at least 2")
        if self.walks < 1:
            raise ValueError("walks must be positive")
        if self.model == "destination-sampling" and not 0 < self.p < 1:
            raise ValueError(f"rewire probability must lie in (0, 1), got {self.p}")
        if self.burnin_multiplier < 0:
            raise ValueError("burnin_multiplier must be nonnegative")


@dataclass(frozen=True)
class RunResult:
    """Summary of the measured walks at one size."""

    n: int
    model: str
    mean_steps: float
    stderr: float
    walks: int
    seed: int
    wall_time: float
    status: str = "ok"


def _discrete_topology(kind: str, n: int) -> CycleTopology | TorusGrid:
    if kind == "cycle":
        return CycleTopology(n)
    side = isqrt(n)
    if side * side != n:
        raise ValueError(f"grid2d size {n} is not a perfect square")
    return TorusGrid(side, 2)


def _measure_sampling(spec: ExperimentSpec, n: int, seed: int) -> tuple[float, float]:
    """Burn in from an empty configuration, then measure while updating."""
    topology = _discrete_topology(spec.topology, n)
    state = ChainState.fresh(n, seed)
    run_chain(topology, spec.p, spec.burnin_multiplier * n, variant="full", state=state)
    if spec.freeze:
        est = monte_carlo_tau(topology, state.config, spec.walks, state.rng)
        return est.mean, est.se
    parts: list[np.ndarray] = []
    done = 0
    while done < spec.walks:
        chunk = (spec.walks - done) * n // (n - 1) + 16
        run = run_chain(topology, spec.p, chunk, variant="full", state=state)
        parts.append(run.lengths)
        done += run.lengths.size
    lengths = np.concatenate(parts)[: spec.walks]
    assert lengths.max(initial=0) <= topology.max_distance
    mean = float(lengths.mean())
    se = 0.0 if spec.walks < 2 else float(lengths.std(ddof=1) / np.sqrt(spec.walks))
    return mean, se


def _measure_fresh(spec: ExperimentSpec, n: int, seed: int) -> tuple[float, float]:
    """Fresh shortcut configurations per walk under a fixed distribution."""
    topology = _discrete_topology(spec.topology, n)
    if spec.model == "kleinberg-harmonic":
        dist = harmonic_cycle(n) if spec.topology == "cycle" else harmonic_volume(topology)
    else:
        if spec.topology == "cycle":
            report = solve_balanced(n, tol=1e-10, max_iters=500)
        else:
            report = solve_balanced_general(topology, tol=1e-10, max_iters=500)
        if not report.converged:
            raise ArithmeticError(f"balance solver failed to converge at n={n}")
        dist = report.result
    rng = np.random.Generator(np.random.PCG64(seed))
    est = monte_carlo_tau(topology, dist, spec.walks, rng)
    return est.mean, est.se


def _measure_continuum(spec: ExperimentSpec, n: int, seed: int) -> tuple[float, float]:
    dim = 1 if spec.topology == "continuum1d" else 2
    if spec.model == "continuum-balanced":
        rng = np.random.default_rng([seed, 0])
        result = poisson_balance_iterate(
            n, dim, iters=4, walks_per_iter=spec.walks, bins=64, rng=rng
        )
        return float(result.mean_steps[-1]), float(result.se_steps[-1])
    lengths: list[int] = []
    for rep in range(CONTINUUM_REPLICATES):
        share = spec.walks // CONTINUUM_REPLICATES + (1 if rep < spec.walks % CONTINUUM_REPLICATES else 0)
        if share == 0:
            continue
        rng = np.random.default_rng([seed, rep])
        points = sample_points(n, dim, rng)
        graph = build_delaunay(points)
        config = augment_kleinberg(graph, rng)
        for _ in range(share):
            dest = int(rng.integers(0, points.size))
            start = (dest + 1 + int(rng.integers(0, points.size - 1))) % points.size
            walk = continuum_greedy_walk(graph, config, start, dest, rng)
            assert walk.length < points.size
            lengths.append(walk.length)
    arr = np.asarray(lengths, dtype=np.float64)
    mean = float(arr.mean())
    se = 0.0 if arr.size < 2 else float(arr.std(ddof=1) / np.sqrt(arr.size))
    return mean, se


def run_scaling(spec: ExperimentSpec) -> list[RunResult]:
    """One RunResult per size; solver failures become error rows."""
    results: list[RunResult] = []
    for index, n in enumerate(spec.sizes):
        seed = spec.seed ^ index
        begin = time.perf_counter()
        try:
            if spec.model == "destination-sampling":
                mean, se = _measure_sampling(spec, n, seed)
            elif spec.model in ("kleinberg-harmonic", "balanced-solved"):
                mean, se = _measure_fresh(spec, n, seed)
            else:
                mean, se = _measure_continuum(spec, n, seed)
            status = "ok"
        except ArithmeticError as exc:
            mean, se, status = float("nan"), float("nan"), f"error: {exc}"
        results.append(
            RunResult(
                n=n,
                model=spec.model,
                mean_steps=mean,
                stderr=se,
                walks=spec.walks,
                seed=seed,
                wall_time=time.perf_counter() - begin,
                status=status,
            )
        )
    return results


def write_scaling_csv(results: list[RunResult], path: str | Path) -> Path:
    """Wall-clock time stays out of the file so reruns are byte-identical."""
    header = ["n", "model", "mean_steps", "stderr", "walks", "seed", "status"]
    rows = [[r.n, r.model, r.mean_steps, r.stderr, r.walks, r.seed, r.status] for r in results]
    return write_csv(path, header, rows)


def fit_doubling_slope(results: list[RunResult]) -> float:
    """Least-squares slope of sqrt(mean steps) per doubling of n."""
    rows = [r for r in results if r.status == "ok"]
    if len(rows) < 3:
        raise ValueError("need at least three usable sizes to fit a slope")
    ns = np.array([r.n for r in rows], dtype=np.int64)
    if np.any(ns[1:] != 2 * ns[:-1]):
        raise ValueError("sizes must form a doubling sequence")
    means = np.array([r.mean_steps for r in rows])
    if not np.all(np.isfinite(means)):
        raise ValueError("mean steps must be finite")
    slope, _ = np.polyfit(np.log2(ns), np.sqrt(means), 1)
    return float(slope)


def run_distribution_snapshot(spec: ExperimentSpec) -> Path:
    """Pooled shortcut-distance histogram of the rewiring chain.

    Burns in, then records SNAPSHOT_COUNT configuration snapshots spaced
    n/10 steps apart and bins the pooled shortcut distances linearly.  The
    output columns carry the per-bin frequency, its reciprocal, and the
    frequency a harmonic distribution would put on the same bin.
    """
    if spec.model != "destination-sampling" or spec.topology != "cycle":
        raise ValueError("distribution snapshots are defined for destination sampling on the cycle")
    n = spec.sizes[-1]
    topology = CycleTopology(n)
    state = ChainState.fresh(n, spec.seed)
    run_chain(topology, spec.p, spec.burnin_multiplier * n, variant="full", state=state)
    spacing = max(n // 10, 1)
    run = run_chain(
        topology, spec.p, SNAPSHOT_COUNT * spacing, variant="full", state=state, snapshot_every=spacing
    )
    counts = np.zeros(n, dtype=np.int64)
    vertices = np.arange(n)
    for config in run.snapshots:
        present = config.dest >= 0
        counts += np.bincount((vertices[present] - config.dest[present]) % n, minlength=n)
    distance_counts = counts[1:]
    total = int(distance_counts.sum())
    if total == 0:
        raise ValueError("no shortcuts present after burn-in")
    bins = min(DISTRIBUTION_BINS, n - 1)
    edges = np.linspace(1.0, float(n), bins + 1)
    idx = np.clip(np.searchsorted(edges, np.arange(1, n), side="right") - 1, 0, bins - 1)
    freq = np.bincount(idx, weights=distance_counts, minlength=bins) / total
    harmonic = np.bincount(idx, weights=harmonic_cycle(n).probs, minlength=bins)
    inv = np.where(freq > 0, 1.0 / np.where(freq > 0, freq, 1.0), np.nan)
    rows = [
        [edges[b], edges[b + 1], freq[b], inv[b], harmonic[b]]
        for b in range(bins)
    ]
    return write_csv(
        spec.output_dir / "shortcut_dist.csv",
        ["bin_lo", "bin_hi", "freq", "inv_freq", "harmonic_freq"],
        rows,
    )


# ---------------------------------------------------------------------------
# SVG output


def _svg_coords(values: np.ndarray, lo: float, hi: float, a: float, b: float) -> np.ndarray:
    if hi <= lo:
        return np.full(values.shape, (a + b) / 2.0)
    return a + (values - lo) / (hi - lo) * (b - a)


def _fmt(v: float) -> str:
    return format(float(v), ".6g")


def emit_svg_plot(table: str | Path, x_column: str, y_column: str, out: str | Path) -> Path:
    """Line-and-marker chart of two CSV columns; presentation only."""
    header, rows = read_csv(table)
    for name in (x_column, y_column):
        if name not in header:
            raise ValueError(f"column {name!r} not found in {table}")
    xi, yi = header.index(x_column), header.index(y_column)
    pts = []
    for row in rows:
        try:
            x, y = float(row[xi]), float(row[yi])
        except ValueError:
            continue
        if np.isfinite(x) and np.isfinite(y):
            pts.append((x, y))
    width, height = 640, 440
    left, right, top, bottom = 64, 624, 16, 392
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    if pts:
        xs = np.array([p[0] for p in pts])
        ys = np.array([p[1] for p in pts])
        x_lo, x_hi = float(xs.min()), float(xs.max())
        y_lo, y_hi = float(ys.min()), float(ys.max())
    else:
        x_lo, x_hi, y_lo, y_hi = 0.0, 1.0, 0.0, 1.0
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    for tick in np.linspace(x_lo, x_hi, 5):
        px = _svg_coords(np.array([tick]), x_lo, x_hi, left, right)[0]
        parts.append(
            f'<line x1="{px:.2f}" y1="{bottom}" x2="{px:.2f}" y2="{bottom + 6}" stroke="#444444"/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{bottom + 22}" font-size="12" text-anchor="middle" '
            f'fill="#444444" font-family="sans-serif">{_fmt(tick)}</text>'
        )
    for tick in np.linspace(y_lo, y_hi, 5):
        py = _svg_coords(np.array([tick]), y_lo, y_hi, bottom, top)[0]
        parts.append(
            f'<line x1="{left - 6}" y1="{py:.2f}" x2="{left}" y2="{py:.2f}" stroke="#444444"/>'
        )
        parts.append(
            f'<text x="{left - 10}" y="{py + 4:.2f}" font-size="12" text-anchor="end" '
            f'fill="#444444" font-family="sans-serif">{_fmt(tick)}</text>'
        )
    parts.append(
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="#000000"/>'
    )
    parts.append(f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="#000000"/>')
    parts.append(
        f'<text x="{(left + right) // 2}" y="{height - 12}" font-size="13" text-anchor="middle" '
        f'font-family="sans-serif">{x_column}</text>'
    )
    parts.append(
        f'<text x="14" y="{(top + bottom) // 2}" font-size="13" text-anchor="middle" '
        f'font-family="sans-serif" transform="rotate(-90 14 {(top + bottom) // 2})">{y_column}</text>'
    )
    if pts:
        px = _svg_coords(xs, x_lo, x_hi, left, right)
        py = _svg_coords(ys, y_lo, y_hi, bottom, top)
        if len(pts) > 1:
            chain = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
            parts.append(
                f'<polyline points="{chain}" fill="none" stroke="#2060c0" stroke-width="1.5"/>'
            )
        for a, b in zip(px, py):
            parts.append(f'<circle cx="{a:.2f}" cy="{b:.2f}" r="3" fill="#2060c0"/>')
    parts.append("</svg>")
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(parts) + "\n", encoding="utf-8", newline="\n")
    return out
