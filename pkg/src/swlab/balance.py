r"""Exact hitting profiles and the balance fixed point.

For a fixed destination, condition on how a greedy walk can first arrive at a
vertex x: through a shortcut from some strictly farther vertex pointing
exactly at x, through a base edge from a parent whose own shortcut led
nowhere useful, or by starting at x.  With a distance-invariant shortcut
distribution this yields a linear recursion for the hitting probabilities
h(x), solvable by backward substitution from the farthest vertices in.

The balance map sends a distance distribution l to h/tau, the visit profile
it induces, normalized by the expected number of distinct vertices visited.
A distribution equal to its own image is called balanced; iterating the map
from uniform finds it.  On the 3-cycle the fixed point is the golden section:
l*(1) solves a^2 + a - 1 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .shortcuts import DistanceDistribution, uniform_distances
from .tables import write_csv
from .topology import CycleTopology, TorusGrid

__all__ = [
    "HittingProfile",
    "FixedPointReport",
    "hitting_profile_cycle",
    "hitting_profile_general",
    "tau",
    "balance_map",
    "solve_balanced",
    "solve_balanced_general",
]


@dataclass
class HittingProfile:
    """Visit probabilities of a greedy walk toward a fixed destination.

    index "distance" means h[i] is the probability of hitting the vertex at
    distance i + 1 (the cycle case); index "vertex" means h[i] belongs to
    vertex i + 1 with the destination at 0.  tau is the sum, the expected
    number of distinct non-destination vertices visited, counting the start.
    """

    h: np.ndarray
    tau: float
    index: str = "distance"

    def __post_init__(self) -> None:
        h = np.asarray(self.h, dtype=np.float64)
        if h.ndim != 1 or h.size == 0:
            raise ValueError("h must be a nonempty 1-D array")
        if np.any(h <= 0) or np.any(h > 1 + 1e-9):
            raise ValueError("hitting probabilities must lie in (0, 1]")
        if self.index not in ("distance", "vertex"):
            raise ValueError(f"unknown index kind {self.index!r}")
        object.__setattr__(self, "h", h)

    def pooled_by_distance(self, topology: CycleTopology | TorusGrid) -> np.ndarray:
        """Total hitting mass per distance 1..max_distance."""
        if self.index == "distance":
            return self.h.copy()
        if self.h.size != topology.n - 1:
            raise ValueError("profile size does not match the graph")
        verts = np.arange(1, topology.n)
        dists = topology.distance_many(verts, np.zeros(verts.size, dtype=np.int64))
        out = np.zeros(topology.max_distance)
        np.add.at(out, dists - 1, self.h)
        return out


def hitting_profile_cycle(dist: DistanceDistribution, n: int) -> HittingProfile:
    """Exact hitting probabilities on the directed n-cycle.

    Vertex x (= distance x from destination 0) is hit either by a shortcut
    from some farther xi pointing exactly at it, or from x + 1 stepping down
    because its own shortcut overshoots past 0, or the walk starts there:

        h(x) = sum_{xi > x} h(xi) l(xi - x)
             + h(x + 1) * sum_{s >= x + 2} l(s)  +  1 / (n - 1),

    with h(n - 1) = 1/(n - 1).  Solved backwards in O(n^2).
    """
    if n < 2:
        raise ValueError(f"cycle needs at least 2 vertices, got n={n}")
    if dist.max_distance != n - 1:
        raise ValueError(f"distribution covers {dist.max_distance} distances, cycle needs {n - 1}")
    ell = dist.probs
    # tail[j] = total shortcut mass at distances >= j
    tail = np.zeros(n + 1)
    tail[1:n] = np.cumsum(ell[::-1])[::-1]
    h = np.zeros(n)
    h[n - 1] = 1.0 / (n - 1)
    start_mass = 1.0 / (n - 1)
    for x in range(n - 2, 0, -1):
        h[x] = float(np.dot(h[x + 1 :], ell[: n - 1 - x])) + h[x + 1] * tail[x + 2] + start_mass
    return HittingProfile(h[1:], float(h[1:].sum()), index="distance")


def hitting_profile_general(
    dist: DistanceDistribution,
    topology: CycleTopology | TorusGrid,
) -> HittingProfile:
    """Hitting probabilities on any adapted base graph, destination 0.

    Same arrival decomposition as the cycle, stated per vertex.  A shortcut
    into x is only followed from strictly farther vertices; a parent hands
    the walk down uniformly over its strictly closer base neighbors whenever
    its own shortcut points at least as far away as itself.  Vertices are
    processed in decreasing distance, so every dependency is already solved.
    Reduces to hitting_profile_cycle on the cycle.
    """
    n = topology.n
    if dist.max_distance != topology.max_distance:
        raise ValueError("distribution support does not match the graph")
    # per-target-vertex shortcut probability at each distance
    w = np.zeros(topology.max_distance + 1)
    for d in range(1, topology.max_distance + 1):
        w[d] = dist.probs[d - 1] / topology.sphere_size(d)

    verts = np.arange(n, dtype=np.int64)
    d0 = topology.distance_many(verts, np.zeros(n, dtype=np.int64))

    # fallback[x]: probability that x's shortcut is no closer than x itself,
    # split over its strictly closer base neighbors
    fallback = np.zeros(n)
    n_children = np.zeros(n, dtype=np.int64)
    for x in range(1, n):
        dx = topology.distance_many(np.full(n, x, dtype=np.int64), verts)
        useless = (d0 >= d0[x]) & (verts != x)
        mass = float(w[dx[useless]].sum())
        kids = sum(1 for v in topology.base_neighbors(x) if d0[v] < d0[x])
        if kids == 0:
            raise ValueError(f"vertex {x} has no strictly closer base neighbor; graph not adapted")
        n_children[x] = kids
        fallback[x] = mass / kids

    start_mass = 1.0 / (n - 1)
    order = sorted(range(1, n), key=lambda v: -d0[v])
    h = np.zeros(n)
    for x in order:
        # d(xi, x) for every xi: shortcut lengths are measured from their origin
        dx = topology.distance_many(verts, np.full(n, x, dtype=np.int64))
        farther = d0 > d0[x]
        acc = float(np.dot(h[farther], w[dx[farther]]))
        for xi in topology.in_neighbors(x):
            if d0[xi] > d0[x]:
                acc += h[xi] * fallback[xi]
        h[x] = acc + start_mass
    return HittingProfile(h[1:], float(h[1:].sum()), index="vertex")


def tau(profile: HittingProfile) -> float:
    """Expected walk length: the sum of all hitting probabilities."""
    return float(profile.h.sum())


def balance_map(dist: DistanceDistribution, n: int) -> DistanceDistribution:
    """One application of l -> h/tau on the directed n-cycle."""
    profile = hitting_profile_cycle(dist, n)
    return DistanceDistribution(profile.h / profile.h.sum())


@dataclass
class FixedPointReport:
    """Outcome of the damped fixed-point iteration."""

    iterations: int
    final_tv: float
    converged: bool
    result: DistanceDistribution
    tau: float

    def write_report(self, path: str | Path, n: int) -> Path:
        header = ["n", "iterations", "final_tv", "converged", "tau"]
        row = [n, self.iterations, self.final_tv, self.converged, self.tau]
        return write_csv(path, header, [row])


def _iterate_fixed_point(step, start, tol, max_iters, damping):
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    if not 0 <= damping < 1:
        raise ValueError("damping must lie in [0, 1)")
    cur = start
    tv = np.inf
    iterations = 0
    for iterations in range(1, max_iters + 1):
        nxt = step(cur)
        if damping:
            nxt = DistanceDistribution((1 - damping) * nxt.probs + damping * cur.probs)
        tv = cur.tv_distance(nxt)
        cur = nxt
        if tv <= tol:
            break
    return cur, iterations, tv


def solve_balanced(
    n: int,
    tol: float = 1e-12,
    max_iters: int = 500,
    damping: float = 0.0,
) -> FixedPointReport:
    """Find the balanced shortcut distribution of the directed n-cycle.

    Iterates the balance map from the uniform distribution until successive
    iterates agree within tol in total variation.  The report's converged
    flag is honest: hitting max_iters leaves it False and callers decide
    what to do.  Deterministic, no randomness involved.
    """
    if n < 2:
        raise ValueError(f"cycle needs at least 2 vertices, got n={n}")
    result, iterations, tv = _iterate_fixed_point(
        lambda d: balance_map(d, n), uniform_distances(n - 1), tol, max_iters, damping
    )
    return FixedPointReport(
        iterations=iterations,
        final_tv=float(tv),
        converged=bool(tv <= tol),
        result=result,
        tau=hitting_profile_cycle(result, n).tau,
    )


def solve_balanced_general(
    topology: CycleTopology | TorusGrid,
    tol: float = 1e-12,
    max_iters: int = 500,
    damping: float = 0.0,
) -> FixedPointReport:
    """Balanced distance distribution for an arbitrary adapted base graph.

    The per-vertex hitting masses are pooled by distance each round, staying
    inside the distance-invariant family.
    """

    def step(d: DistanceDistribution) -> DistanceDistribution:
        profile = hitting_profile_general(d, topology)
        pooled = profile.pooled_by_distance(topology)
        return DistanceDistribution(pooled / pooled.sum())

    result, iterations, tv = _iterate_fixed_point(
        step, uniform_distances(topology.max_distance), tol, max_iters, damping
    )
    return FixedPointReport(
        iterations=iterations,
        final_tv=float(tv),
        converged=bool(tv <= tol),
        result=result,
        tau=hitting_profile_general(result, topology).tau,
    )
