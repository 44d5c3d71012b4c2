"""Shortcut distributions over distances and sampled shortcut maps.

A shortcut scheme is described by a probability distribution over distances
1..D.  A vertex draws a distance from it and then a uniform vertex on the
sphere of that radius, which on the cycle is a single vertex.  Sampling every
vertex independently gives a configuration: one outgoing shortcut per vertex,
stored as a dense destination array with -1 marking an absent link.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .tables import read_csv, write_csv
from .topology import CycleTopology, TorusGrid

__all__ = [
    "DistanceDistribution",
    "ShortcutConfig",
    "harmonic_cycle",
    "harmonic_volume",
    "uniform_distances",
    "sample_config",
    "empirical_marginal",
]

_MASS_TOL = 1e-9


@dataclass
class DistanceDistribution:
    """Probability distribution over shortcut distances 1..max_distance.

    probs[d - 1] is the probability of distance d.  Entries must be
    nonnegative and sum to 1 within a small tolerance; the array is
    normalized exactly and frozen on construction.
    """

    probs: np.ndarray
    _cdf: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("probs must be a nonempty 1-D array")
        if np.any(probs < 0) or not np.all(np.isfinite(probs)):
            raise ValueError("probabilities must be finite and nonnegative")
        total = probs.sum()
        if abs(total - 1.0) > _MASS_TOL:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")
        probs = probs / total
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)

    @property
    def max_distance(self) -> int:
        return int(self.probs.size)

    def prob(self, d: int) -> float:
        if not 1 <= d <= self.max_distance:
            raise ValueError(f"distance {d} out of range [1, {self.max_distance}]")
        return float(self.probs[d - 1])

    def cdf(self) -> np.ndarray:
        if self._cdf is None:
            object.__setattr__(self, "_cdf", np.cumsum(self.probs))
        return self._cdf

    def sample_distances(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Draw iid distances; inverse-CDF via searchsorted."""
        u = rng.random(size)
        return np.searchsorted(self.cdf(), u, side="right").astype(np.int64) + 1

    def tv_distance(self, other: "DistanceDistribution") -> float:
        if other.max_distance != self.max_distance:
            raise ValueError("distributions have different supports")
        return 0.5 * float(np.abs(self.probs - other.probs).sum())

    def to_csv(self, path: str | Path) -> Path:
        rows = ((d + 1, p) for d, p in enumerate(self.probs))
        return write_csv(path, ["distance", "prob"], rows)

    @classmethod
    def from_csv(cls, path: str | Path) -> "DistanceDistribution":
        header, rows = read_csv(path)
        if header != ["distance", "prob"]:
            raise ValueError(f"expected header distance,prob in {path}, got {header}")
        probs = np.zeros(len(rows))
        for row in rows:
            d = int(row[0])
            if not 1 <= d <= len(rows):
                raise ValueError(f"distance {d} out of range in {path}")
            probs[d - 1] = float(row[1])
        return cls(probs)


def uniform_distances(max_distance: int) -> DistanceDistribution:
    if max_distance < 1:
        raise ValueError("need at least one distance")
    return DistanceDistribution(np.full(max_distance, 1.0 / max_distance))


def harmonic_cycle(n: int) -> DistanceDistribution:
    """Inverse-distance distribution on the directed n-cycle.

    prob(d) is proportional to 1/d for d in 1..n-1, which makes the mass
    reaching past each scale roughly uniform in log distance.
    """
    if n < 2:
        raise ValueError(f"cycle needs at least 2 vertices, got n={n}")
    w = 1.0 / np.arange(1, n)
    return DistanceDistribution(w / w.sum())


def harmonic_volume(topology: CycleTopology | TorusGrid) -> DistanceDistribution:
    """Inverse-ball-volume distribution for an arbitrary base graph.

    The probability that a shortcut lands on a particular vertex at distance
    d is proportional to 1/ball_volume(d); the per-distance mass is that
    times the sphere size.  On the cycle this is 1/(d + 1) up to
    normalization, slightly flatter than harmonic_cycle.
    """
    D = topology.max_distance
    if D < 1:
        raise ValueError("graph has no vertex pairs at positive distance")
    mass = np.empty(D)
    for d in range(1, D + 1):
        mass[d - 1] = topology.sphere_size(d) / topology.ball_volume(d)
    return DistanceDistribution(mass / mass.sum())


@dataclass
class ShortcutConfig:
    """One outgoing shortcut destination per vertex; -1 means absent."""

    dest: np.ndarray

    def __post_init__(self) -> None:
        dest = np.asarray(self.dest, dtype=np.int64)
        if dest.ndim != 1 or dest.size < 2:
            raise ValueError("dest must be a 1-D array over at least 2 vertices")
        n = dest.size
        if np.any(dest >= n) or np.any(dest < -1):
            raise ValueError("destinations must be -1 or valid vertex ids")
        if np.any(dest == np.arange(n)):
            raise ValueError("self-loop shortcuts are not allowed")
        object.__setattr__(self, "dest", dest)

    @property
    def n(self) -> int:
        return int(self.dest.size)

    def target(self, x: int) -> int | None:
        t = int(self.dest[x])
        return None if t < 0 else t

    def complete(self) -> bool:
        return bool(np.all(self.dest >= 0))

    def copy(self) -> "ShortcutConfig":
        return ShortcutConfig(self.dest.copy())

    def distances(self, topology: CycleTopology | TorusGrid) -> np.ndarray:
        """Shortcut lengths of the present links, in vertex order."""
        src = np.flatnonzero(self.dest >= 0)
        return topology.distance_many(src, self.dest[src])

    def to_csv(self, path: str | Path) -> Path:
        return write_csv(path, ["vertex", "dest"], enumerate(self.dest))

    @classmethod
    def from_csv(cls, path: str | Path) -> "ShortcutConfig":
        header, rows = read_csv(path)
        if header != ["vertex", "dest"]:
            raise ValueError(f"expected header vertex,dest in {path}, got {header}")
        dest = np.full(len(rows), -1, dtype=np.int64)
        for row in rows:
            dest[int(row[0])] = int(row[1])
        return cls(dest)


def sample_config(
    dist: DistanceDistribution,
    topology: CycleTopology | TorusGrid,
    rng: np.random.Generator,
) -> ShortcutConfig:
    """Draw an independent shortcut for every vertex.

    Each vertex draws a distance from dist and then a uniform vertex on its
    sphere of that radius.
    """
    n = topology.n
    if dist.max_distance != topology.max_distance:
        raise ValueError(
            f"distribution covers distances up to {dist.max_distance}, "
            f"graph needs {topology.max_distance}"
        )
    dd = dist.sample_distances(rng, n)
    if isinstance(topology, CycleTopology):
        dest = (np.arange(n) - dd) % n
        return ShortcutConfig(dest)
    dest = np.empty(n, dtype=np.int64)
    for d in range(1, topology.max_distance + 1):
        idx = np.flatnonzero(dd == d)
        if idx.size == 0:
            continue
        k = topology.sphere_size(d)
        picks = rng.integers(0, k, idx.size) if k > 1 else np.zeros(idx.size, dtype=np.int64)
        for i, x in enumerate(idx):
            dest[x] = topology.vertices_at(int(x), d)[picks[i]]
    return ShortcutConfig(dest)


def empirical_marginal(
    configs: list[ShortcutConfig],
    topology: CycleTopology | TorusGrid,
) -> DistanceDistribution:
    """Pooled distance histogram of the shortcuts in a batch of configs."""
    if not configs:
        raise ValueError("need at least one config")
    counts = np.zeros(topology.max_distance + 1)
    for cfg in configs:
        if not cfg.complete():
            raise ValueError("every config must have all shortcuts present")
        if cfg.n != topology.n:
            raise ValueError("config size does not match the graph")
        counts += np.bincount(cfg.distances(topology), minlength=topology.max_distance + 1)
    return DistanceDistribution(counts[1:] / counts.sum())
