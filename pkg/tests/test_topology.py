import numpy as np
import pytest

from swlab import (
    BallVolumeTable,
    CycleTopology,
    TorusGrid,
    ball_volume,
    base_neighbors,
    cycle_distance,
    torus_distance,
)


def test_cycle_distance_is_directed():
    assert cycle_distance(0, 7, 8) == 1
    assert cycle_distance(7, 0, 8) == 7
    assert cycle_distance(3, 3, 8) == 0
    assert cycle_distance(5, 2, 8) == 3


def test_cycle_distance_rejects_bad_input():
    with pytest.raises(ValueError):
        cycle_distance(0, 0, 1)
    with pytest.raises(ValueError):
        cycle_distance(8, 0, 8)
    with pytest.raises(ValueError):
        cycle_distance(0, -1, 8)


def test_cycle_topology_surface():
    topo = CycleTopology(8)
    assert topo.directed
    assert topo.max_distance == 7
    assert topo.base_neighbors(0) == (7,)
    assert topo.base_neighbors(5) == (4,)
    assert topo.in_neighbors(7) == (0,)
    assert [topo.ball_volume(r) for r in range(8)] == list(range(1, 9))
    assert all(topo.sphere_size(d) == 1 for d in range(8))
    assert topo.vertices_at(3, 5) == (6,)
    assert topo.vertices_at(3, 0) == (3,)
    with pytest.raises(ValueError):
        CycleTopology(1)
    with pytest.raises(ValueError):
        topo.ball_volume(8)


def test_cycle_distance_many_matches_scalar():
    topo = CycleTopology(11)
    xs = np.arange(11).repeat(11)
    ys = np.tile(np.arange(11), 11)
    vec = topo.distance_many(xs, ys)
    scalar = np.array([topo.distance(int(a), int(b)) for a, b in zip(xs, ys)])
    assert np.array_equal(vec, scalar)


def test_torus_distance_wraps():
    assert torus_distance((0, 0), (4, 4), 5) == 2
    assert torus_distance((0,), (3,), 4) == 1
    assert torus_distance((1, 2), (3, 0), 6) == 4
    with pytest.raises(ValueError):
        torus_distance((0, 0), (5, 0), 5)
    with pytest.raises(ValueError):
        torus_distance((0, 0), (1,), 5)


def test_torus_grid_side4_counts():
    # distance histogram from any vertex of the 4x4 torus: 1, 4, 6, 4, 1
    grid = TorusGrid(4, 2)
    assert grid.n == 16
    assert grid.max_distance == 4
    assert [grid.sphere_size(d) for d in range(5)] == [1, 4, 6, 4, 1]
    assert grid.ball_volume(2) == 11
    assert grid.ball_volume(4) == 16
    assert not grid.directed


def test_torus_grid_spheres_partition_vertices():
    grid = TorusGrid(5, 2)
    for x in (0, 7, 24):
        seen = []
        for d in range(grid.max_distance + 1):
            shell = grid.vertices_at(x, d)
            assert len(shell) == grid.sphere_size(d)
            for v in shell:
                assert grid.distance(x, v) == d
            seen.extend(shell)
        assert sorted(seen) == list(range(grid.n))


def test_torus_distance_many_matches_scalar():
    grid = TorusGrid(6, 2)
    rng = np.random.default_rng(3)
    xs = rng.integers(0, grid.n, 200)
    ys = rng.integers(0, grid.n, 200)
    vec = grid.distance_many(xs, ys)
    scalar = np.array([grid.distance(int(a), int(b)) for a, b in zip(xs, ys)])
    assert np.array_equal(vec, scalar)

    ring = TorusGrid(9, 1)
    xs = rng.integers(0, 9, 100)
    ys = rng.integers(0, 9, 100)
    assert np.array_equal(
        ring.distance_many(xs, ys),
        np.array([ring.distance(int(a), int(b)) for a, b in zip(xs, ys)]),
    )


def test_torus_grid_neighbors():
    grid = TorusGrid(5, 2)
    x = grid.vertex((1, 1))
    nbrs = {grid.coords(v) for v in grid.base_neighbors(x)}
    assert nbrs == {(0, 1), (2, 1), (1, 0), (1, 2)}
    assert grid.in_neighbors(x) == grid.base_neighbors(x)

    ring = TorusGrid(7, 1)
    assert set(ring.base_neighbors(0)) == {1, 6}
    # side 2 collapses the two axis moves onto the same vertex
    tiny = TorusGrid(2, 1)
    assert tiny.base_neighbors(0) == (1,)


def test_vertex_coords_roundtrip():
    grid = TorusGrid(6, 2)
    for v in range(grid.n):
        assert grid.vertex(grid.coords(v)) == v
    with pytest.raises(ValueError):
        grid.coords(36)
    with pytest.raises(ValueError):
        grid.vertex((6, 0))
    with pytest.raises(ValueError):
        TorusGrid(4, 3)


def test_ball_volume_table():
    table = BallVolumeTable.from_topology(CycleTopology(6))
    assert table.max_distance == 5
    assert np.array_equal(table.counts, np.arange(1, 7))
    assert table(0) == 1
    assert table(5) == 6
    with pytest.raises(ValueError):
        table(6)

    grid_table = BallVolumeTable.from_topology(TorusGrid(4, 2))
    assert np.array_equal(grid_table.counts, [1, 5, 11, 15, 16])

    with pytest.raises(ValueError):
        BallVolumeTable(np.array([2, 3]))
    with pytest.raises(ValueError):
        BallVolumeTable(np.array([1, 3, 3]))


def test_free_function_wrappers():
    topo = CycleTopology(9)
    assert ball_volume(topo, 4) == topo.ball_volume(4)
    assert base_neighbors(topo, 2) == topo.base_neighbors(2)
