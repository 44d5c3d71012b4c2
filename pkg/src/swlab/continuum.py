"""Continuum small worlds: Poisson points, Delaunay base graphs, radial shortcut measures.

Geometry lives on the circle of unit circumference (dim 1) or the flat unit
torus (dim 2).  A point set of intensity n**dim induces a Delaunay graph
whose cells shrink like 1/n, and greedy routing runs on that graph exactly
as in the discrete case, with Euclidean-on-the-torus distances.

Shortcuts are drawn from radial measures.  The reference measure has density
1/(log n * Vol(r)) per unit area at radius r, integrated over spheres this
puts equal mass on every multiplicative band of radii.  Refined measures are
binned histograms produced by routing experiments; both kinds are sampled
the same way, by radius and then a uniform point of the geodesic sphere,
rejecting draws that land in the origin's own cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import acos, asin, log, pi, sqrt
from pathlib import Path

import numpy as np
from scipy.spatial import Delaunay, QhullError, cKDTree

from .routing import WalkRecord
from .tables import read_csv, write_csv

__all__ = [
    "ball_volume_continuum",
    "sphere_measure_continuum",
    "torus_metric",
    "PointSet",
    "sample_points",
    "DelaunayGraph",
    "build_delaunay",
    "KleinbergMeasure",
    "RadialMeasure",
    "ContinuumConfig",
    "sample_kleinberg_shortcuts",
    "augment_kleinberg",
    "augment_from_measure",
    "continuum_greedy_walk",
    "estimate_hitting_measure",
    "poisson_balance_iterate",
    "PoissonBalanceResult",
    "CapFraction",
    "cap_fraction",
    "r_max_continuum",
]


# ---------------------------------------------------------------------------
# geometry


def r_max_continuum(dim: int) -> float:
    """Largest geodesic distance: half the circumference, or the cell diagonal."""
    if dim == 1:
        return 0.5
    if dim == 2:
        return sqrt(2.0) / 2.0
    raise ValueError(f"dim must be 1 or 2, got {dim}")


def ball_volume_continuum(r, dim: int):
    """Volume (length or area) of a geodesic ball of radius r.

    On the circle this is min(2r, 1).  On the torus it is pi r^2 until the
    ball wraps at r = 1/2; beyond that the four overshooting circular
    segments are cut off, and the volume reaches 1 at r = sqrt(2)/2.
    """
    r = np.asarray(r, dtype=np.float64)
    if np.any(r < 0) or np.any(r > r_max_continuum(dim) + 1e-12):
        raise ValueError("radius out of range")
    if dim == 1:
        return np.minimum(2.0 * r, 1.0)
    if dim == 2:
        vol = pi * r * r
        over = r > 0.5
        if np.any(over):
            ro = np.where(over, r, 1.0)
            seg = ro * ro * np.arccos(1.0 / (2.0 * ro)) - 0.5 * np.sqrt(ro * ro - 0.25)
            vol = np.where(over, pi * ro * ro - 4.0 * seg, vol)
        return vol
    raise ValueError(f"dim must be 1 or 2, got {dim}")


def sphere_measure_continuum(r, dim: int):
    """Boundary measure of the geodesic sphere of radius r.

    Differentiates ball_volume_continuum: 2 points on the circle, and on the
    torus a circle of circumference 2 pi r that loses four arcs once r
    exceeds 1/2.
    """
    r = np.asarray(r, dtype=np.float64)
    if dim == 1:
        return np.where(r < 0.5, 2.0, 0.0)
    if dim == 2:
        out = 2.0 * pi * r
        over = r > 0.5
        if np.any(over):
            ro = np.where(over, r, 1.0)
            out = np.where(over, 2.0 * ro * (pi - 4.0 * np.arccos(1.0 / (2.0 * ro))), out)
        return out
    raise ValueError(f"dim must be 1 or 2, got {dim}")


def torus_metric(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Geodesic distance between positions of shape (..., dim)."""
    d = np.abs(np.asarray(a) - np.asarray(b))
    d = np.minimum(d, 1.0 - d)
    return np.sqrt((d * d).sum(axis=-1))


_INV_GRID: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _volume_inverse(v: np.ndarray, dim: int) -> np.ndarray:
    """Radius with ball volume v, via a cached monotone interpolation grid."""
    if dim == 1:
        return np.asarray(v) / 2.0
    if dim not in _INV_GRID:
        rmax = r_max_continuum(2)
        r_grid = np.concatenate(
            [np.geomspace(1e-9, 0.5, 4096, endpoint=False), np.linspace(0.5, rmax, 4096)]
        )
        _INV_GRID[dim] = (np.asarray(ball_volume_continuum(r_grid, 2)), r_grid)
    vol_grid, r_grid = _INV_GRID[dim]
    return np.interp(v, vol_grid, r_grid)


def _sample_sphere(
    center: np.ndarray,
    radii: np.ndarray,
    rng: np.random.Generator,
    dim: int,
) -> np.ndarray:
    """Uniform points of geodesic spheres around one center, wrapped into [0, 1)."""
    k = radii.size
    if dim == 1:
        signs = rng.integers(0, 2, k) * 2 - 1
        return np.mod(center[0] + signs * radii, 1.0)[:, None]
    theta = np.empty(k)
    small = radii <= 0.5
    u = rng.random(k)
    theta[small] = 2.0 * pi * u[small]
    if np.any(~small):
        # beyond r = 1/2 only four arcs of the Euclidean circle stay geodesic;
        # per quadrant the direction angle must keep both axis displacements
        # at most 1/2
        rb = radii[~small]
        lo = np.arccos(np.minimum(1.0 / (2.0 * rb), 1.0))
        hi = np.arcsin(np.minimum(1.0 / (2.0 * rb), 1.0))
        quad = rng.integers(0, 4, rb.size)
        theta[~small] = quad * (pi / 2.0) + lo + u[~small] * (hi - lo)
    out = np.empty((k, 2))
    out[:, 0] = center[0] + radii * np.cos(theta)
    out[:, 1] = center[1] + radii * np.sin(theta)
    return np.mod(out, 1.0)


# ---------------------------------------------------------------------------
# point sets


@dataclass
class PointSet:
    """A sampled Poisson point set with its generating scale.

    positions has shape (N, dim) with coordinates in [0, 1).  n is the
    scale parameter; the intensity is n**dim so cells have volume about
    1/n**dim.  retries counts how many times an empty draw was rejected.
    """

    dim: int
    positions: np.ndarray
    n: float
    retries: int = 0
    _tree: cKDTree | None = field(default=None, repr=False, compare=False)
    _nn: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        pos = np.asarray(self.positions, dtype=np.float64)
        if pos.ndim != 2 or pos.shape[1] != self.dim:
            raise ValueError(f"positions must have shape (N, {self.dim})")
        if pos.shape[0] < 1:
            raise ValueError("point set must be nonempty")
        if np.any(pos < 0) or np.any(pos >= 1):
            raise ValueError("coordinates must lie in [0, 1)")
        if self.dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")
        if self.n <= 1:
            raise ValueError("scale n must exceed 1")
        object.__setattr__(self, "positions", pos)

    @property
    def size(self) -> int:
        return int(self.positions.shape[0])

    @property
    def intensity(self) -> float:
        return float(self.n) ** self.dim

    def tree(self) -> cKDTree:
        if self._tree is None:
            object.__setattr__(self, "_tree", cKDTree(self.positions, boxsize=1.0))
        return self._tree

    def owner(self, query: np.ndarray) -> np.ndarray:
        """Index of the nearest site for each query position (Voronoi cell)."""
        _, idx = self.tree().query(np.asarray(query, dtype=np.float64))
        return np.atleast_1d(idx).astype(np.int64)

    def nn_distance(self) -> np.ndarray:
        """Distance from each site to its nearest other site."""
        if self._nn is None:
            if self.size == 1:
                nn = np.full(1, r_max_continuum(self.dim))
            else:
                dd, _ = self.tree().query(self.positions, k=2)
                nn = dd[:, 1]
            object.__setattr__(self, "_nn", nn)
        return self._nn

    def to_csv(self, path: str | Path) -> Path:
        header = ["id", "x"] if self.dim == 1 else ["id", "x", "y"]
        rows = ([i, *map(float, p)] for i, p in enumerate(self.positions))
        return write_csv(path, header, rows)


def sample_points(n: float, dim: int, rng: np.random.Generator) -> PointSet:
    """Poisson point set of intensity n**dim on the unit circle or torus.

    Draws with fewer than two points are rejected and redrawn; the retry
    count is recorded on the result.
    """
    if dim not in (1, 2):
        raise ValueError(f"dim must be 1 or 2, got {dim}")
    if n <= 1:
        raise ValueError("scale n must exceed 1")
    lam = float(n) ** dim
    retries = 0
    while True:
        count = int(rng.poisson(lam))
        if count >= 2:
            break
        retries += 1
    return PointSet(dim=dim, positions=rng.random((count, dim)), n=float(n), retries=retries)


# ---------------------------------------------------------------------------
# Delaunay base graphs


@dataclass
class DelaunayGraph:
    """Adjacency of the periodic Delaunay triangulation of a point set."""

    points: PointSet
    neighbors: list[np.ndarray]
    jitter_applied: bool = False

    @property
    def size(self) -> int:
        return self.points.size

    def degree(self) -> np.ndarray:
        return np.array([len(a) for a in self.neighbors])

    def edges(self) -> np.ndarray:
        """Undirected edge list, each pair once with src < dst."""
        out = []
        for i, nbrs in enumerate(self.neighbors):
            for j in nbrs:
                if i < j:
                    out.append((i, int(j)))
        return np.asarray(out, dtype=np.int64).reshape(-1, 2)

    def edges_to_csv(self, path: str | Path) -> Path:
        return write_csv(path, ["src", "dst"], self.edges())


def _delaunay_edges_tiled(pos: np.ndarray) -> set[tuple[int, int]]:
    npts = pos.shape[0]
    shifts = [(i, j) for i in (-2, -1, 0, 1, 2) for j in (-2, -1, 0, 1, 2)]
    tiled = np.concatenate([pos + np.array(s, dtype=np.float64) for s in shifts])
    tri = Delaunay(tiled)
    edges: set[tuple[int, int]] = set()
    sim = tri.simplices
    for a, b in ((0, 1), (0, 2), (1, 2)):
        va, vb = sim[:, a], sim[:, b]
        keep = (va < npts) | (vb < npts)
        for x, y in zip(va[keep] % npts, vb[keep] % npts):
            if x != y:
                edges.add((min(int(x), int(y)), max(int(x), int(y))))
    return edges


def build_delaunay(points: PointSet) -> DelaunayGraph:
    """Delaunay adjacency with periodic boundary conditions.

    dim 1 is the sorted ring.  dim 2 triangulates a 5x5 tiling and keeps
    edges touching the central copy; every empty disk on the unit torus has
    radius below sqrt(2)/2, so the margin of two tiles makes the restriction
    exact.  Up to three points are fully connected anyway, and degenerate
    inputs that break the triangulation are retried once with a recorded
    1e-12 jitter.
    """
    npts = points.size
    if points.dim == 1:
        order = np.argsort(points.positions[:, 0], kind="stable")
        neighbors: list[set[int]] = [set() for _ in range(npts)]
        for k in range(npts):
            a = int(order[k])
            b = int(order[(k + 1) % npts])
            if a != b:
                neighbors[a].add(b)
                neighbors[b].add(a)
        return DelaunayGraph(points, [np.array(sorted(s), dtype=np.int64) for s in neighbors])
    if npts <= 3:
        nbr = [np.array([j for j in range(npts) if j != i], dtype=np.int64) for i in range(npts)]
        return DelaunayGraph(points, nbr)
    jitter_applied = False
    pos = points.positions
    try:
        edges = _delaunay_edges_tiled(pos)
    except QhullError:
        jig = np.random.Generator(np.random.PCG64(0x5EED))
        pos = np.mod(pos + 1e-12 * jig.standard_normal(pos.shape), 1.0)
        edges = _delaunay_edges_tiled(pos)
        jitter_applied = True
    neighbors = [set() for _ in range(npts)]
    for a, b in edges:
        neighbors[a].add(b)
        neighbors[b].add(a)
    return DelaunayGraph(
        points,
        [np.array(sorted(s), dtype=np.int64) for s in neighbors],
        jitter_applied=jitter_applied,
    )


# ---------------------------------------------------------------------------
# radial measures


@dataclass(frozen=True)
class KleinbergMeasure:
    """The analytic shortcut intensity with density 1/(log n * Vol(r)).

    Integrating over the sphere at radius r gives the radial density
    S(r) / (log n * Vol(r)), which is the derivative of log Vol / log n, so
    the mass between radii a and b is log(Vol(b)/Vol(a)) / log n.
    """

    n: float
    dim: int

    def __post_init__(self) -> None:
        if self.n <= 1:
            raise ValueError("scale n must exceed 1")
        if self.dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")

    @property
    def r_max(self) -> float:
        return r_max_continuum(self.dim)

    def mass_between(self, lo, hi) -> np.ndarray:
        lo = np.asarray(lo, dtype=np.float64)
        hi = np.asarray(hi, dtype=np.float64)
        if np.any(lo <= 0) or np.any(hi > self.r_max + 1e-12) or np.any(hi < lo):
            raise ValueError("need 0 < lo <= hi <= r_max")
        vol_lo = ball_volume_continuum(lo, self.dim)
        vol_hi = ball_volume_continuum(np.minimum(hi, self.r_max), self.dim)
        return (np.log(vol_hi) - np.log(vol_lo)) / log(self.n)

    def total_mass(self, lo: float) -> float:
        return float(self.mass_between(lo, self.r_max))

    def radial_density(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=np.float64)
        return sphere_measure_continuum(r, self.dim) / (
            log(self.n) * ball_volume_continuum(r, self.dim)
        )

    def sample_radii(self, rng: np.random.Generator, size: int, lo: float) -> np.ndarray:
        """Inverse-CDF draws on [lo, r_max]: volume is log-uniform there."""
        if not 0 < lo < self.r_max:
            raise ValueError(f"lower cutoff {lo} out of (0, {self.r_max})")
        u = rng.random(size)
        log_vlo = log(float(ball_volume_continuum(lo, self.dim)))
        log_vhi = log(float(ball_volume_continuum(self.r_max, self.dim)))
        return _volume_inverse(np.exp(log_vlo + u * (log_vhi - log_vlo)), self.dim)


@dataclass
class RadialMeasure:
    """A nonnegative measure on radii, stored as histogram bins."""

    edges: np.ndarray
    masses: np.ndarray

    def __post_init__(self) -> None:
        edges = np.asarray(self.edges, dtype=np.float64)
        masses = np.asarray(self.masses, dtype=np.float64)
        if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
            raise ValueError("edges must be strictly increasing with at least 2 entries")
        if masses.shape != (edges.size - 1,) or np.any(masses < 0):
            raise ValueError("masses must be nonnegative, one per bin")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "masses", masses)

    @property
    def bins(self) -> int:
        return int(self.masses.size)

    def total(self) -> float:
        return float(self.masses.sum())

    def tv(self, other: "RadialMeasure") -> float:
        """Half the L1 distance between bin masses; bins must agree."""
        if not np.array_equal(self.edges, other.edges):
            raise ValueError("measures use different bins")
        return 0.5 * float(np.abs(self.masses - other.masses).sum())

    @staticmethod
    def log_edges(r_min: float, r_maximum: float, bins: int) -> np.ndarray:
        if not 0 < r_min < r_maximum:
            raise ValueError("need 0 < r_min < r_max")
        if bins < 1:
            raise ValueError("need at least one bin")
        return np.geomspace(r_min, r_maximum, bins + 1)

    @classmethod
    def from_kleinberg(cls, measure: KleinbergMeasure, edges: np.ndarray) -> "RadialMeasure":
        edges = np.asarray(edges, dtype=np.float64)
        return cls(edges, measure.mass_between(edges[:-1], edges[1:]))

    def sample_radii(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Bin by mass, then uniform within the bin."""
        tot = self.total()
        if tot <= 0:
            raise ValueError("cannot sample from a zero measure")
        cdf = np.cumsum(self.masses) / tot
        idx = np.searchsorted(cdf, rng.random(size), side="right")
        idx = np.minimum(idx, self.bins - 1)
        lo = self.edges[idx]
        hi = self.edges[idx + 1]
        return lo + rng.random(size) * (hi - lo)

    def to_csv(self, path: str | Path) -> Path:
        rows = (
            (float(self.edges[k]), float(self.edges[k + 1]), float(self.masses[k]))
            for k in range(self.bins)
        )
        return write_csv(path, ["bin_lo", "bin_hi", "mass"], rows)

    @classmethod
    def from_csv(cls, path: str | Path) -> "RadialMeasure":
        header, rows = read_csv(path)
        if header != ["bin_lo", "bin_hi", "mass"]:
            raise ValueError(f"expected header bin_lo,bin_hi,mass in {path}, got {header}")
        edges = [float(rows[0][0])]
        masses = []
        for row in rows:
            if abs(float(row[0]) - edges[-1]) > 1e-12:
                raise ValueError("bins must be contiguous")
            edges.append(float(row[1]))
            masses.append(float(row[2]))
        return cls(np.asarray(edges), np.asarray(masses))


# ---------------------------------------------------------------------------
# shortcut sampling


@dataclass
class ContinuumConfig:
    """Shortcut target lists per vertex; repeats are allowed and harmless."""

    targets: list[np.ndarray]

    def count(self) -> int:
        return int(sum(len(t) for t in self.targets))


def sample_kleinberg_shortcuts(
    x: int,
    points: PointSet,
    rng: np.random.Generator,
) -> np.ndarray:
    """Shortcut targets of one vertex under the analytic measure.

    The own-cell core within half the nearest-neighbor distance carries no
    usable mass, so radii start at delta/2; survivors are mapped to the
    owners of their positions and draws still landing in x's cell are
    dropped.  The count is Poisson with the measure's remaining total.
    """
    measure = KleinbergMeasure(points.n, points.dim)
    delta = float(points.nn_distance()[x])
    lo = min(delta / 2.0, measure.r_max / 2.0)
    count = int(rng.poisson(measure.total_mass(lo)))
    if count == 0:
        return np.empty(0, dtype=np.int64)
    radii = measure.sample_radii(rng, count, lo)
    pos = _sample_sphere(points.positions[x], radii, rng, points.dim)
    owners = points.owner(pos)
    return owners[owners != x]


def augment_kleinberg(graph: DelaunayGraph, rng: np.random.Generator) -> ContinuumConfig:
    """Independent analytic-measure shortcuts for every vertex."""
    graph.points.nn_distance()
    return ContinuumConfig(
        [sample_kleinberg_shortcuts(x, graph.points, rng) for x in range(graph.size)]
    )


def augment_from_measure(
    graph: DelaunayGraph,
    measure: RadialMeasure,
    rng: np.random.Generator,
) -> ContinuumConfig:
    """Shortcuts drawn from a binned measure, rejecting in-cell draws.

    No lower cutoff is applied; draws inside the origin's own cell reject
    themselves through the owner test.
    """
    points = graph.points
    tot = measure.total()
    targets: list[np.ndarray] = []
    for x in range(graph.size):
        count = int(rng.poisson(tot))
        if count == 0:
            targets.append(np.empty(0, dtype=np.int64))
            continue
        radii = measure.sample_radii(rng, count)
        radii = np.minimum(radii, r_max_continuum(points.dim))
        pos = _sample_sphere(points.positions[x], radii, rng, points.dim)
        owners = points.owner(pos)
        targets.append(owners[owners != x])
    return ContinuumConfig(targets)


# ---------------------------------------------------------------------------
# routing on the continuum


def continuum_greedy_walk(
    graph: DelaunayGraph,
    config: ContinuumConfig,
    start: int,
    dest: int,
    rng: np.random.Generator,
) -> WalkRecord:
    """Greedy walk by geodesic distance to the destination's position.

    Candidates are the Delaunay neighbors plus the vertex's shortcut
    targets; the closest strictly improving one wins.  Exact ties have
    probability zero and fall to the lowest index.
    """
    points = graph.points
    zpos = points.positions[dest]
    path = [start]
    cur = start
    d_cur = float(torus_metric(points.positions[cur], zpos))
    while cur != dest:
        cand = np.concatenate([graph.neighbors[cur], config.targets[cur]])
        if cand.size == 0:
            raise ValueError(f"vertex {cur} has no neighbors")
        dists = torus_metric(points.positions[cand], zpos)
        k = int(np.argmin(dists))
        if dists[k] >= d_cur:
            raise ValueError(f"no strictly closer candidate at vertex {cur}")
        cur = int(cand[k])
        d_cur = float(dists[k])
        path.append(cur)
    return WalkRecord(start, dest, path)


def estimate_hitting_measure(
    walks: list[WalkRecord],
    points: PointSet,
    bins: int,
) -> RadialMeasure:
    """Per-walk expected visit counts by distance to the destination.

    Every non-terminal path vertex contributes at the geodesic distance from
    its position to the destination's, binned on the standard log grid; the
    total mass is the mean walk length.  A walk of length zero contributes
    nothing.
    """
    if not walks:
        raise ValueError("need at least one walk")
    edges = RadialMeasure.log_edges(
        r_max_continuum(points.dim) / (4.0 * points.n), r_max_continuum(points.dim), bins
    )
    counts = np.zeros(bins)
    for w in walks:
        if w.length == 0:
            continue
        zpos = points.positions[w.dest]
        d = torus_metric(points.positions[np.asarray(w.path[:-1])], zpos)
        idx = np.clip(np.searchsorted(edges, d, side="right") - 1, 0, bins - 1)
        counts += np.bincount(idx, minlength=bins)
    return RadialMeasure(edges, counts / len(walks))


@dataclass
class PoissonBalanceResult:
    """Trace of the continuum balance iteration."""

    measures: list[RadialMeasure]
    tv_series: np.ndarray
    mean_steps: np.ndarray
    se_steps: np.ndarray
    point_counts: np.ndarray


def poisson_balance_iterate(
    n: float,
    dim: int,
    iters: int,
    walks_per_iter: int,
    bins: int,
    rng: np.random.Generator,
) -> PoissonBalanceResult:
    """Iterate measure -> normalized hitting measure on fresh geometries.

    Starts from the analytic measure projected onto the bin grid.  Each
    round draws a new point set, augments it from the current measure, routes
    walks between uniform distinct pairs, and replaces the measure with the
    binned visit profile divided by its total.  Returns the initial measure
    plus one refinement per round, successive half-L1 distances, and the
    mean walk lengths.
    """
    if iters < 1 or walks_per_iter < 1:
        raise ValueError("iters and walks_per_iter must be positive")
    edges = RadialMeasure.log_edges(r_max_continuum(dim) / (4.0 * n), r_max_continuum(dim), bins)
    current = RadialMeasure.from_kleinberg(KleinbergMeasure(n, dim), edges)
    measures = [current]
    tv_series = []
    mean_steps = []
    se_steps = []
    point_counts = []
    for _ in range(iters):
        points = sample_points(n, dim, rng)
        graph = build_delaunay(points)
        config = augment_from_measure(graph, current, rng)
        walks = []
        for _w in range(walks_per_iter):
            dest = int(rng.integers(0, points.size))
            start = (dest + 1 + int(rng.integers(0, points.size - 1))) % points.size
            walks.append(continuum_greedy_walk(graph, config, start, dest, rng))
        hits = estimate_hitting_measure(walks, points, bins)
        tau_hat = hits.total()
        if tau_hat <= 0:
            raise ValueError("all walks had length zero, cannot normalize")
        refined = RadialMeasure(edges, hits.masses / tau_hat)
        tv_series.append(current.tv(refined))
        lengths = np.array([w.length for w in walks], dtype=np.float64)
        mean_steps.append(float(lengths.mean()))
        se_steps.append(0.0 if lengths.size < 2 else float(lengths.std(ddof=1) / sqrt(lengths.size)))
        point_counts.append(points.size)
        measures.append(refined)
        current = refined
    return PoissonBalanceResult(
        measures=measures,
        tv_series=np.asarray(tv_series),
        mean_steps=np.asarray(mean_steps),
        se_steps=np.asarray(se_steps),
        point_counts=np.asarray(point_counts, dtype=np.int64),
    )


# ---------------------------------------------------------------------------
# sphere cap fraction


@dataclass(frozen=True)
class CapFraction:
    """Lower bound on the useful fraction of a shortcut sphere."""

    q: float
    s: float | None = None
    r: float | None = None


def cap_fraction(
    dim: int,
    rng: np.random.Generator | None = None,
    grid: int = 12,
    samples: int = 200_000,
    delta: float = 1.0,
) -> CapFraction:
    """Worst-case overlap fraction between a sphere and a nearby ball.

    For two points at distance s with (3/4) delta < s <= delta, and a sphere
    of radius r in the same band around the second point, this is the
    fraction of the sphere lying within (3/8) delta of the first point.  In
    dim 1 exactly one of the two sphere points always qualifies (the gap
    |r - s| stays below delta/4), so q = 1/2 exactly.  dim 2 scans a grid of
    (s, r) pairs by Monte Carlo and reports the minimizing pair.  Every
    length scales with delta, so the answer does not depend on it.
    """
    if dim == 1:
        return CapFraction(0.5)
    if dim != 2:
        raise ValueError(f"dim must be 1 or 2, got {dim}")
    if delta <= 0:
        raise ValueError("delta must be positive")
    if rng is None:
        rng = np.random.Generator(np.random.PCG64(0))
    cap_r = 0.375 * delta
    levels = 0.75 * delta + (np.arange(1, grid + 1) / grid) * 0.25 * delta
    best = (np.inf, 0.0, 0.0)
    for s in levels:
        target = np.array([s, 0.0])
        for r in levels:
            theta = rng.random(samples) * 2.0 * pi
            px = r * np.cos(theta) - target[0]
            py = r * np.sin(theta) - target[1]
            frac = float(np.mean(px * px + py * py <= cap_r * cap_r))
            if frac < best[0]:
                best = (frac, float(s), float(r))
    return CapFraction(best[0], best[1], best[2])
