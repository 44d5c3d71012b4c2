"""Base graphs that greedy routing runs on.

Two finite families live here: the directed cycle, where every vertex has a
single base edge to its predecessor, and the undirected torus grid in one or
two dimensions.  Both expose the same small surface: a metric, the base
neighborhood of a vertex, ball volumes, and sphere enumeration.  Routing and
shortcut sampling only ever talk to that surface, so the continuum graphs in
:mod:`swlab.continuum` can reuse the same walk logic.

Vertices are integers in ``[0, n)``.  Torus vertices are row-major flattened
coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "CycleTopology",
    "TorusGrid",
    "BallVolumeTable",
    "cycle_distance",
    "torus_distance",
    "ball_volume",
    "base_neighbors",
]


def cycle_distance(x: int, y: int, n: int) -> int:
    """Steps needed to reach y from x walking backwards along the cycle.

    The cycle is directed: the only base move from ``x`` is to ``x - 1``
    (mod n), so the distance is asymmetric.  ``cycle_distance(0, n - 1, n)``
    is ``1`` while the reverse direction costs ``n - 1``.
    """
    if n < 2:
        raise ValueError(f"cycle needs at least 2 vertices, got n={n}")
    if not (0 <= x < n and 0 <= y < n):
        raise ValueError(f"vertices must lie in [0, {n}), got x={x}, y={y}")
    return (x - y) % n


def torus_distance(x: tuple[int, ...], y: tuple[int, ...], side: int, dim: int | None = None) -> int:
    """L1 distance between coordinate tuples with per-axis wraparound."""
    if side < 2:
        raise ValueError(f"torus side must be at least 2, got {side}")
    if dim is None:
        dim = len(x)
    if len(x) != dim or len(y) != dim:
        raise ValueError(f"expected {dim}-dimensional coordinates, got {x} and {y}")
    total = 0
    for a, b in zip(x, y):
        if not (0 <= a < side and 0 <= b < side):
            raise ValueError(f"coordinates must lie in [0, {side}), got {x}, {y}")
        d = abs(a - b)
        total += min(d, side - d)
    return total


@dataclass(frozen=True)
class CycleTopology:
    """Directed cycle on n vertices; base edges point from x to x - 1."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"cycle needs at least 2 vertices, got n={self.n}")

    @property
    def directed(self) -> bool:
        return True

    @property
    def max_distance(self) -> int:
        return self.n - 1

    def distance(self, x: int, y: int) -> int:
        return cycle_distance(x, y, self.n)

    def distance_many(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Vectorized distance for equal-shape arrays of vertex ids."""
        return (np.asarray(xs, dtype=np.int64) - np.asarray(ys, dtype=np.int64)) % self.n

    def base_neighbors(self, x: int) -> tuple[int, ...]:
        if not 0 <= x < self.n:
            raise ValueError(f"vertex {x} out of range [0, {self.n})")
        return ((x - 1) % self.n,)

    def in_neighbors(self, x: int) -> tuple[int, ...]:
        """Vertices with a base edge into x (just the successor here)."""
        if not 0 <= x < self.n:
            raise ValueError(f"vertex {x} out of range [0, {self.n})")
        return ((x + 1) % self.n,)

    def ball_volume(self, r: int) -> int:
        """Number of vertices within distance r of any fixed vertex."""
        if not 0 <= r <= self.max_distance:
            raise ValueError(f"radius {r} out of range [0, {self.max_distance}]")
        return r + 1

    def sphere_size(self, d: int) -> int:
        if not 0 <= d <= self.max_distance:
            raise ValueError(f"distance {d} out of range [0, {self.max_distance}]")
        return 1

    def vertices_at(self, x: int, d: int) -> tuple[int, ...]:
        """All vertices exactly distance d from x (a single vertex here)."""
        if not 0 <= x < self.n:
            raise ValueError(f"vertex {x} out of range [0, {self.n})")
        if not 0 <= d <= self.max_distance:
            raise ValueError(f"distance {d} out of range [0, {self.max_distance}]")
        return ((x - d) % self.n,)


@dataclass(frozen=True)
class TorusGrid:
    """Undirected grid on side**dim vertices with wraparound edges.

    dim is 1 (a ring) or 2 (the square torus).  Distances are graph
    distances, i.e. wrapped L1.
    """

    side: int
    dim: int

    def __post_init__(self) -> None:
        if self.side < 2:
            raise ValueError(f"torus side must be at least 2, got {self.side}")
        if self.dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")

    @property
    def n(self) -> int:
        return self.side**self.dim

    @property
    def directed(self) -> bool:
        return False

    @property
    def max_distance(self) -> int:
        return self.dim * (self.side // 2)

    def coords(self, v: int) -> tuple[int, ...]:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range [0, {self.n})")
        if self.dim == 1:
            return (v,)
        return divmod(v, self.side)

    def vertex(self, coords: tuple[int, ...]) -> int:
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {coords}")
        v = 0
        for c in coords:
            if not 0 <= c < self.side:
                raise ValueError(f"coordinate {c} out of range [0, {self.side})")
            v = v * self.side + c
        return v

    def distance(self, x: int, y: int) -> int:
        return torus_distance(self.coords(x), self.coords(y), self.side, self.dim)

    def distance_many(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        m = self.side
        if self.dim == 1:
            d = np.abs(xs - ys)
            return np.minimum(d, m - d)
        dr = np.abs(xs // m - ys // m)
        dc = np.abs(xs % m - ys % m)
        return np.minimum(dr, m - dr) + np.minimum(dc, m - dc)

    def base_neighbors(self, x: int) -> tuple[int, ...]:
        c = self.coords(x)
        seen: dict[int, None] = {}
        for axis in range(self.dim):
            for step in (-1, 1):
                nc = list(c)
                nc[axis] = (nc[axis] + step) % self.side
                seen[self.vertex(tuple(nc))] = None
        return tuple(seen)

    def in_neighbors(self, x: int) -> tuple[int, ...]:
        return self.base_neighbors(x)

    def _distance_counts(self) -> np.ndarray:
        return _torus_distance_counts(self.side, self.dim)

    def ball_volume(self, r: int) -> int:
        if not 0 <= r <= self.max_distance:
            raise ValueError(f"radius {r} out of range [0, {self.max_distance}]")
        return int(self._distance_counts()[: r + 1].sum())

    def sphere_size(self, d: int) -> int:
        if not 0 <= d <= self.max_distance:
            raise ValueError(f"distance {d} out of range [0, {self.max_distance}]")
        return int(self._distance_counts()[d])

    def vertices_at(self, x: int, d: int) -> tuple[int, ...]:
        if not 0 <= d <= self.max_distance:
            raise ValueError(f"distance {d} out of range [0, {self.max_distance}]")
        offs = _torus_sphere_offsets(self.side, self.dim)[d]
        c = self.coords(x)
        m = self.side
        if self.dim == 1:
            return tuple((c[0] + o[0]) % m for o in offs)
        return tuple(self.vertex(((c[0] + o[0]) % m, (c[1] + o[1]) % m)) for o in offs)


@lru_cache(maxsize=None)
def _torus_distance_counts(side: int, dim: int) -> np.ndarray:
    """counts[d] = number of vertices at distance d from a fixed vertex."""
    if dim == 1:
        axis = np.abs(np.arange(side))
        dists = np.minimum(axis, side - axis)
    else:
        axis = np.abs(np.arange(side))
        axis = np.minimum(axis, side - axis)
        dists = (axis[:, None] + axis[None, :]).ravel()
    return np.bincount(dists, minlength=dim * (side // 2) + 1)


@lru_cache(maxsize=None)
def _torus_sphere_offsets(side: int, dim: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """offsets[d] = coordinate offsets from a vertex to its distance-d sphere."""
    if dim == 1:
        axis = np.arange(side)
        dists = np.minimum(axis, side - axis)
        out: list[list[tuple[int, ...]]] = [[] for _ in range(side // 2 + 1)]
        for o, d in zip(axis, dists):
            out[d].append((int(o),))
    else:
        axis = np.arange(side)
        wrapped = np.minimum(axis, side - axis)
        out = [[] for _ in range(2 * (side // 2) + 1)]
        for i in range(side):
            for j in range(side):
                out[wrapped[i] + wrapped[j]].append((int(i), int(j)))
    return tuple(tuple(lst) for lst in out)


@dataclass(frozen=True)
class BallVolumeTable:
    """Precomputed |B(r)| for every radius of a translation-invariant graph.

    counts[r] is the number of vertices within distance r of any fixed
    vertex.  Starts at 1, strictly increases, and ends at n.
    """

    counts: np.ndarray

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.ndim != 1 or counts.size == 0:
            raise ValueError("counts must be a nonempty 1-D array")
        if counts[0] != 1:
            raise ValueError("a radius-0 ball holds exactly its center")
        if np.any(np.diff(counts) <= 0):
            raise ValueError("ball volumes must strictly increase up to the diameter")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_topology(cls, topology: "CycleTopology | TorusGrid") -> "BallVolumeTable":
        radii = np.arange(topology.max_distance + 1)
        return cls(np.array([topology.ball_volume(int(r)) for r in radii]))

    @property
    def max_distance(self) -> int:
        return self.counts.size - 1

    def __call__(self, r: int) -> int:
        if not 0 <= r <= self.max_distance:
            raise ValueError(f"radius {r} outside [0, {self.max_distance}]")
        return int(self.counts[r])


def ball_volume(topology: CycleTopology | TorusGrid, r: int) -> int:
    """Vertices within distance r of a point; grows linearly on the cycle."""
    return topology.ball_volume(r)


def base_neighbors(topology: CycleTopology | TorusGrid, x: int) -> tuple[int, ...]:
    return topology.base_neighbors(x)
