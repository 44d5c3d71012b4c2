"""Greedy routing walks and Monte Carlo step-count estimates.

The walk at each vertex considers its base neighbors plus its one shortcut
and moves to whichever candidate is closest to the destination, except that
only strictly-closer moves are allowed.  The shortcut wins ties against base
edges; ties among base edges are broken uniformly.  Because every step
strictly decreases the distance, a walk from x to z takes at most d(x, z)
steps and never revisits a vertex.

Step counts can be measured against a frozen configuration or against fresh
configurations drawn independently for every walk.  The fresh-configuration
case on the cycle collapses to a one-dimensional distance chain, which is
what makes million-walk estimates cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Protocol

import numpy as np

from .shortcuts import DistanceDistribution, ShortcutConfig
from .topology import CycleTopology, TorusGrid

__all__ = [
    "WalkRecord",
    "TauEstimate",
    "greedy_step",
    "greedy_walk",
    "monte_carlo_tau",
    "mc_hitting_cycle",
    "FreshShortcuts",
]


class ShortcutSource(Protocol):
    def target(self, x: int) -> int | None: ...


@dataclass
class WalkRecord:
    """A completed greedy walk; path runs from start to dest inclusive."""

    start: int
    dest: int
    path: list[int]

    @property
    def length(self) -> int:
        return len(self.path) - 1

    def validate(self, topology: CycleTopology | TorusGrid) -> None:
        """Check strict progress and endpoints; raises ValueError on defects."""
        if self.path[0] != self.start or self.path[-1] != self.dest:
            raise ValueError("path endpoints disagree with start/dest")
        if len(set(self.path)) != len(self.path):
            raise ValueError("walk revisited a vertex")
        dists = [topology.distance(v, self.dest) for v in self.path]
        for a, b in zip(dists, dists[1:]):
            if b >= a:
                raise ValueError(f"distance failed to decrease: {a} -> {b}")
        if self.length > topology.distance(self.start, self.dest):
            raise ValueError("walk exceeded the initial distance")


class TauEstimate(NamedTuple):
    """Mean greedy walk length with its standard error."""

    mean: float
    se: float


class FreshShortcuts:
    """Per-walk lazy shortcut sampler.

    Draws each vertex's shortcut on first access and caches it, which is
    equivalent to sampling a full configuration up front because a greedy
    walk never queries the same vertex twice.  Make a new instance (or call
    reset) for every walk.
    """

    def __init__(
        self,
        dist: DistanceDistribution,
        topology: CycleTopology | TorusGrid,
        rng: np.random.Generator,
    ) -> None:
        if dist.max_distance != topology.max_distance:
            raise ValueError("distribution support does not match the graph")
        self.dist = dist
        self.topology = topology
        self.rng = rng
        self._cache: dict[int, int] = {}

    def reset(self) -> None:
        self._cache.clear()

    def target(self, x: int) -> int | None:
        hit = self._cache.get(x)
        if hit is not None:
            return hit
        d = int(self.dist.sample_distances(self.rng, 1)[0])
        sphere = self.topology.vertices_at(x, d)
        t = sphere[0] if len(sphere) == 1 else sphere[int(self.rng.integers(0, len(sphere)))]
        self._cache[x] = t
        return t


def greedy_step(
    topology: CycleTopology | TorusGrid,
    config: ShortcutSource,
    current: int,
    dest: int,
    rng: np.random.Generator,
) -> int:
    """One greedy move from current toward dest; current must not be dest."""
    d_cur = topology.distance(current, dest)
    if d_cur == 0:
        raise ValueError("already at the destination")
    best = d_cur
    ties: list[int] = []
    for v in topology.base_neighbors(current):
        d = topology.distance(v, dest)
        if d < best:
            best, ties = d, [v]
        elif d == best:
            ties.append(v)
    g = config.target(current)
    if g is not None:
        d = topology.distance(g, dest)
        if d < d_cur and d <= best:
            return g
    if not ties:
        raise ValueError(f"no strictly closer neighbor at vertex {current}; graph not adapted")
    if len(ties) == 1:
        return ties[0]
    return ties[int(rng.integers(0, len(ties)))]


def greedy_walk(
    topology: CycleTopology | TorusGrid,
    config: ShortcutSource,
    start: int,
    dest: int,
    rng: np.random.Generator,
) -> WalkRecord:
    path = [start]
    current = start
    while current != dest:
        current = greedy_step(topology, config, current, dest, rng)
        path.append(current)
    return WalkRecord(start, dest, path)


def _cycle_chain_lengths(
    dist: DistanceDistribution,
    n: int,
    walks: int,
    rng: np.random.Generator,
    visit_counts: np.ndarray | None = None,
) -> np.ndarray:
    """Walk lengths for fresh configurations on the cycle.

    Only the distance to the destination matters there: a shortcut of length
    S at distance D moves to D - S when S <= D and is ignored otherwise, so
    the whole walk is a chain on distances.  Active walks are compacted each
    round.  visit_counts, if given, accumulates how many walks pass through
    each distance.
    """
    cdf = dist.cdf()
    D = rng.integers(1, n, walks)
    lengths = np.zeros(walks, dtype=np.int64)
    idx = np.arange(walks)
    while D.size:
        if visit_counts is not None:
            visit_counts += np.bincount(D, minlength=n)
        S = np.searchsorted(cdf, rng.random(D.size), side="right") + 1
        D = np.where(S <= D, D - S, D - 1)
        lengths[idx] += 1
        alive = D > 0
        D, idx = D[alive], idx[alive]
    return lengths


def _cycle_frozen_lengths(
    config: ShortcutConfig,
    starts: np.ndarray,
    dests: np.ndarray,
) -> np.ndarray:
    """Vectorized frozen-configuration walks on the cycle (no randomness)."""
    n = config.n
    dest_arr = config.dest
    cur = starts.copy()
    lengths = np.zeros(starts.size, dtype=np.int64)
    idx = np.arange(starts.size)
    z = dests.copy()
    while cur.size:
        D = (cur - z) % n
        g = dest_arr[cur]
        S = (cur - g) % n
        take = (g >= 0) & (S <= D)
        cur = np.where(take, g, (cur - 1) % n)
        lengths[idx] += 1
        alive = cur != z
        cur, z, idx = cur[alive], z[alive], idx[alive]
    return lengths


def _draw_start_dest(n: int, walks: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Uniform dest, start uniform over the other n - 1 vertices."""
    dests = rng.integers(0, n, walks)
    starts = (dests + rng.integers(1, n, walks)) % n
    return starts, dests


def monte_carlo_tau(
    topology: CycleTopology | TorusGrid,
    source: ShortcutConfig | DistanceDistribution,
    walks: int,
    rng: np.random.Generator,
) -> TauEstimate:
    """Estimate the expected greedy walk length over random start/dest pairs.

    Destinations are uniform and starts are uniform over the remaining
    vertices.  A ShortcutConfig source is held frozen across walks; a
    DistanceDistribution source draws a fresh configuration per walk.
    """
    if walks < 1:
        raise ValueError("need at least one walk")
    n = topology.n
    if isinstance(source, DistanceDistribution):
        if isinstance(topology, CycleTopology):
            lengths = _cycle_chain_lengths(source, n, walks, rng)
        else:
            fresh = FreshShortcuts(source, topology, rng)
            lengths = np.empty(walks, dtype=np.int64)
            for w in range(walks):
                z = int(rng.integers(0, n))
                s = (z + int(rng.integers(1, n))) % n
                fresh.reset()
                lengths[w] = len(greedy_walk(topology, fresh, s, z, rng).path) - 1
    else:
        if source.n != n:
            raise ValueError("config size does not match the graph")
        if isinstance(topology, CycleTopology):
            starts, dests = _draw_start_dest(n, walks, rng)
            lengths = _cycle_frozen_lengths(source, starts, dests)
        else:
            lengths = np.empty(walks, dtype=np.int64)
            for w in range(walks):
                z = int(rng.integers(0, n))
                s = (z + int(rng.integers(1, n))) % n
                lengths[w] = len(greedy_walk(topology, source, s, z, rng).path) - 1
    mean = float(lengths.mean())
    se = 0.0 if walks == 1 else float(lengths.std(ddof=1) / np.sqrt(walks))
    return TauEstimate(mean, se)


def mc_hitting_cycle(
    dist: DistanceDistribution,
    n: int,
    walks: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, TauEstimate]:
    """Fraction of fresh-configuration walks that visit each distance.

    Returns (freqs, tau) where freqs[d - 1] estimates the probability that a
    walk from a uniform start passes through distance d on its way to the
    destination; the start itself counts as visited.
    """
    if n < 2 or walks < 1:
        raise ValueError("need n >= 2 and at least one walk")
    counts = np.zeros(n, dtype=np.int64)
    lengths = _cycle_chain_lengths(dist, n, walks, rng, visit_counts=counts)
    mean = float(lengths.mean())
    se = 0.0 if walks == 1 else float(lengths.std(ddof=1) / np.sqrt(walks))
    return counts[1:] / walks, TauEstimate(mean, se)
