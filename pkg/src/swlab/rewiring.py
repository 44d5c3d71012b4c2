"""Shortcut evolution by destination sampling.

One chain step: draw a start y and destination z independently and uniformly
(y = z is a no-op step), route greedily from y to z under the current
configuration, then let every non-terminal walk vertex independently repoint
its shortcut to z with probability p.  Walks both measure and reshape the
configuration, so the shortcut distribution drifts toward the visit profile
of the walks it carries.

The single-sample variant rewires at most one vertex per walk: with
probability p * w, where w is the number of non-terminal vertices, one of
them is chosen uniformly.  Each vertex's marginal rewire probability is
exactly p, same as the independent variant, but never two in one walk.  It
requires p <= 1/n so that p * w stays a probability.

States start with every shortcut absent; walks simply ignore missing links.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from .shortcuts import DistanceDistribution, ShortcutConfig, empirical_marginal
from .routing import WalkRecord, greedy_walk
from .topology import CycleTopology, TorusGrid

__all__ = [
    "ChainState",
    "ChainRun",
    "destination_sampling_step",
    "single_sample_step",
    "run_chain",
    "stationarity_check",
]


@dataclass
class ChainState:
    """Mutable chain state: configuration, step count, RNG, walk statistics."""

    config: ShortcutConfig
    step: int
    rng: np.random.Generator
    walks_done: int = 0
    length_sum: float = 0.0
    length_sqsum: float = 0.0

    @classmethod
    def fresh(cls, n: int, seed: int) -> "ChainState":
        config = ShortcutConfig(np.full(n, -1, dtype=np.int64))
        return cls(config=config, step=0, rng=np.random.Generator(np.random.PCG64(seed)))

    def mean_length(self) -> float:
        if self.walks_done == 0:
            raise ValueError("no walks recorded yet")
        return self.length_sum / self.walks_done

    def se_length(self) -> float:
        w = self.walks_done
        if w < 2:
            return 0.0
        var = (self.length_sqsum - self.length_sum**2 / w) / (w - 1)
        return sqrt(max(var, 0.0) / w)


def _canon_variant(variant: str) -> str:
    if variant == "single_sample":
        return "single"
    return variant


def _check_p(p: float, n: int, variant: str) -> None:
    if variant == "full":
        if not 0 < p < 1:
            raise ValueError(f"rewiring probability must lie in (0, 1), got {p}")
    elif variant == "single":
        if not 0 < p <= 1.0 / n:
            raise ValueError(f"single-sample variant needs 0 < p <= 1/n = {1.0 / n}, got {p}")
    else:
        raise ValueError(f"unknown variant {variant!r}, expected 'full' or 'single'")


def _cycle_step(dest: np.ndarray, n: int, p: float, rng: np.random.Generator, single: bool):
    """One chain step on the directed cycle, mutating dest in place.

    Returns (visited, z) for a real walk and (None, z) for a y = z no-op.
    Only the distance to z matters on the cycle, so the walk is simulated as
    a distance countdown without touching topology objects.
    """
    yz = rng.integers(0, n, 2)
    y = int(yz[0])
    z = int(yz[1])
    if y == z:
        return None, z
    cur = y
    D = y - z if y > z else y - z + n
    visited: list[int] = []
    ap = visited.append
    while D:
        g = dest[cur]
        if g >= 0:
            S = cur - g if g < cur else cur - g + n
            if S <= D:
                ap(cur)
                cur = int(g)
                D -= S
                continue
        ap(cur)
        cur = cur - 1 if cur else n - 1
        D -= 1
    t = len(visited)
    if single:
        if rng.random() < p * t:
            dest[visited[int(rng.integers(0, t))]] = z
    else:
        u = rng.random(t)
        for i in range(t):
            if u[i] < p:
                dest[visited[i]] = z
    return visited, z


def _generic_step(
    state: ChainState,
    topology: CycleTopology | TorusGrid,
    p: float,
    single: bool,
):
    """One chain step on an arbitrary adapted graph.

    Consumes randomness in the same order as the cycle kernel (start/dest
    pair, walk tie-breaks, then rewiring draws), so on the cycle both paths
    produce identical trajectories from identical seeds.
    """
    rng = state.rng
    n = topology.n
    yz = rng.integers(0, n, 2)
    y = int(yz[0])
    z = int(yz[1])
    if y == z:
        return None
    walk = greedy_walk(topology, state.config, y, z, rng)
    visited = walk.path[:-1]
    t = len(visited)
    dest = state.config.dest
    if single:
        if rng.random() < p * t:
            dest[visited[int(rng.integers(0, t))]] = z
    else:
        u = rng.random(t)
        for i in range(t):
            if u[i] < p:
                dest[visited[i]] = z
    return walk


def _record_walk(state: ChainState, t: int) -> None:
    state.walks_done += 1
    state.length_sum += t
    state.length_sqsum += t * t


def destination_sampling_step(
    state: ChainState,
    topology: CycleTopology | TorusGrid,
    p: float,
) -> tuple[ChainState, WalkRecord | None]:
    """Advance the chain one step with independent per-vertex rewiring."""
    _check_p(p, topology.n, "full")
    if state.config.n != topology.n:
        raise ValueError("state size does not match the graph")
    if isinstance(topology, CycleTopology):
        visited, z = _cycle_step(state.config.dest, topology.n, p, state.rng, single=False)
        state.step += 1
        if visited is None:
            return state, None
        _record_walk(state, len(visited))
        return state, WalkRecord(visited[0], z, visited + [z])
    walk = _generic_step(state, topology, p, single=False)
    state.step += 1
    if walk is not None:
        _record_walk(state, walk.length)
    return state, walk


def single_sample_step(
    state: ChainState,
    topology: CycleTopology | TorusGrid,
    p: float,
) -> tuple[ChainState, WalkRecord | None]:
    """Advance one step rewiring at most one vertex; needs p <= 1/n."""
    _check_p(p, topology.n, "single")
    if state.config.n != topology.n:
        raise ValueError("state size does not match the graph")
    if isinstance(topology, CycleTopology):
        visited, z = _cycle_step(state.config.dest, topology.n, p, state.rng, single=True)
        state.step += 1
        if visited is None:
            return state, None
        _record_walk(state, len(visited))
        return state, WalkRecord(visited[0], z, visited + [z])
    walk = _generic_step(state, topology, p, single=True)
    state.step += 1
    if walk is not None:
        _record_walk(state, walk.length)
    return state, walk


@dataclass
class ChainRun:
    """Everything a finished run carries back."""

    state: ChainState
    snapshots: list[ShortcutConfig] = field(default_factory=list)
    snapshot_steps: list[int] = field(default_factory=list)
    lengths: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    length_steps: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))


def run_chain(
    topology: CycleTopology | TorusGrid,
    p: float,
    steps: int,
    variant: str = "full",
    seed: int = 0,
    snapshot_every: int = 0,
    state: ChainState | None = None,
) -> ChainRun:
    """Run the chain for a fixed number of steps.

    Counts y = z no-ops as steps.  snapshot_every > 0 stores a copy of the
    configuration at every multiple of that step count.  Passing a state
    continues an earlier run (the seed argument is then ignored), which is
    how burn-in and measurement phases chain together.
    """
    variant = _canon_variant(variant)
    _check_p(p, topology.n, variant)
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    single = variant == "single"
    if state is None:
        state = ChainState.fresh(topology.n, seed)
    if state.config.n != topology.n:
        raise ValueError("state size does not match the graph")
    lengths: list[int] = []
    length_steps: list[int] = []
    snapshots: list[ShortcutConfig] = []
    snapshot_steps: list[int] = []
    if isinstance(topology, CycleTopology):
        dest = state.config.dest
        n = topology.n
        rng = state.rng
        for _ in range(steps):
            visited, _z = _cycle_step(dest, n, p, rng, single)
            state.step += 1
            if visited is not None:
                t = len(visited)
                _record_walk(state, t)
                lengths.append(t)
                length_steps.append(state.step)
            if snapshot_every and state.step % snapshot_every == 0:
                snapshots.append(state.config.copy())
                snapshot_steps.append(state.step)
    else:
        for _ in range(steps):
            walk = _generic_step(state, topology, p, single)
            state.step += 1
            if walk is not None:
                _record_walk(state, walk.length)
                lengths.append(walk.length)
                length_steps.append(state.step)
            if snapshot_every and state.step % snapshot_every == 0:
                snapshots.append(state.config.copy())
                snapshot_steps.append(state.step)
    return ChainRun(
        state=state,
        snapshots=snapshots,
        snapshot_steps=snapshot_steps,
        lengths=np.asarray(lengths, dtype=np.int64),
        length_steps=np.asarray(length_steps, dtype=np.int64),
    )


def stationarity_check(
    snapshots: list[ShortcutConfig],
    topology: CycleTopology | TorusGrid,
    reference: DistanceDistribution,
) -> float:
    """Total variation between pooled snapshot shortcut lengths and a target."""
    return empirical_marginal(snapshots, topology).tv_distance(reference)
