import numpy as np
import pytest

from swlab import (
    CycleTopology,
    DistanceDistribution,
    ShortcutConfig,
    TorusGrid,
    empirical_marginal,
    harmonic_cycle,
    harmonic_volume,
    sample_config,
    uniform_distances,
)


def test_harmonic_cycle_n4_exact():
    # weights 1, 1/2, 1/3 normalize to 6/11, 3/11, 2/11
    dist = harmonic_cycle(4)
    assert np.allclose(dist.probs, [6 / 11, 3 / 11, 2 / 11], atol=1e-15)


def test_harmonic_cycle_shape():
    dist = harmonic_cycle(100)
    assert dist.max_distance == 99
    assert np.all(np.diff(dist.probs) < 0)
    assert abs(dist.probs.sum() - 1.0) < 1e-15
    assert dist.prob(1) / dist.prob(99) == pytest.approx(99.0, rel=1e-12)


def test_harmonic_volume_cycle_n4_exact():
    # ball volumes d + 1 give weights 1/2, 1/3, 1/4 -> 6/13, 4/13, 3/13
    dist = harmonic_volume(CycleTopology(4))
    assert np.allclose(dist.probs, [6 / 13, 4 / 13, 3 / 13], atol=1e-15)


def test_harmonic_volume_torus():
    grid = TorusGrid(5, 2)
    dist = harmonic_volume(grid)
    assert dist.max_distance == grid.max_distance
    expected = np.array(
        [grid.sphere_size(d) / grid.ball_volume(d) for d in range(1, grid.max_distance + 1)]
    )
    assert np.allclose(dist.probs, expected / expected.sum(), atol=1e-15)


def test_uniform_distances():
    dist = uniform_distances(5)
    assert np.allclose(dist.probs, 0.2)
    with pytest.raises(ValueError):
        uniform_distances(0)


def test_distribution_validation():
    with pytest.raises(ValueError):
        DistanceDistribution(np.array([0.5, 0.6]))
    with pytest.raises(ValueError):
        DistanceDistribution(np.array([-0.1, 1.1]))
    with pytest.raises(ValueError):
        DistanceDistribution(np.array([]))
    with pytest.raises(ValueError):
        DistanceDistribution(np.array([[0.5, 0.5]]))
    # a sum within 1e-9 of one is accepted and renormalized to machine precision
    d = DistanceDistribution(np.array([0.5, 0.5 + 5e-10]))
    assert abs(d.probs.sum() - 1.0) <= 1e-15
    assert d.cdf()[-1] == pytest.approx(1.0, abs=1e-15)


def test_distribution_probs_frozen():
    d = uniform_distances(4)
    with pytest.raises(ValueError):
        d.probs[0] = 1.0


def test_sample_distances_frequencies():
    probs = np.array([0.4, 0.0, 0.35, 0.25])
    d = DistanceDistribution(probs)
    rng = np.random.default_rng(17)
    draws = d.sample_distances(rng, 200_000)
    assert draws.min() >= 1 and draws.max() <= 4
    assert not np.any(draws == 2)
    freq = np.bincount(draws, minlength=5)[1:] / draws.size
    se = np.sqrt(probs * (1 - probs) / draws.size)
    assert np.all(np.abs(freq - probs) <= 4 * se + 1e-12)


def test_tv_distance():
    a = DistanceDistribution(np.array([0.6, 0.4]))
    b = DistanceDistribution(np.array([0.4, 0.6]))
    assert a.tv_distance(b) == pytest.approx(0.2, abs=1e-15)
    assert a.tv_distance(a) == 0.0
    with pytest.raises(ValueError):
        a.tv_distance(uniform_distances(3))


def test_distribution_csv_roundtrip(tmp_path):
    d = harmonic_cycle(17)
    path = tmp_path / "dist.csv"
    d.to_csv(path)
    back = DistanceDistribution.from_csv(path)
    assert np.array_equal(back.probs, d.probs)
    (tmp_path / "bad.csv").write_text("x,y\n1,0.5\n")
    with pytest.raises(ValueError):
        DistanceDistribution.from_csv(tmp_path / "bad.csv")


def test_shortcut_config_validation():
    with pytest.raises(ValueError):
        ShortcutConfig(np.array([1, 1, 2]))
    with pytest.raises(ValueError):
        ShortcutConfig(np.array([3, 0, 0]))
    with pytest.raises(ValueError):
        ShortcutConfig(np.array([0, -2]))
    cfg = ShortcutConfig(np.array([-1, 0, 0]))
    assert not cfg.complete()
    assert cfg.target(0) is None
    assert cfg.target(1) == 0
    full = ShortcutConfig(np.array([1, 2, 0]))
    assert full.complete()


def test_shortcut_config_distances_and_copy():
    cfg = ShortcutConfig(np.array([-1, 0, 0, 1]))
    topo = CycleTopology(4)
    assert np.array_equal(cfg.distances(topo), [1, 2, 2])
    clone = cfg.copy()
    clone.dest[1] = 3
    assert cfg.dest[1] == 0


def test_shortcut_config_csv_roundtrip(tmp_path):
    cfg = ShortcutConfig(np.array([2, -1, 0, 1]))
    path = tmp_path / "cfg.csv"
    cfg.to_csv(path)
    back = ShortcutConfig.from_csv(path)
    assert np.array_equal(back.dest, cfg.dest)


def test_sample_config_cycle_marginal():
    n = 64
    topo = CycleTopology(n)
    dist = harmonic_cycle(n)
    rng = np.random.default_rng(23)
    configs = [sample_config(dist, topo, rng) for _ in range(800)]
    for cfg in configs[:5]:
        assert cfg.complete()
        lengths = cfg.distances(topo)
        assert lengths.min() >= 1 and lengths.max() <= n - 1
    pooled = empirical_marginal(configs, topo)
    assert pooled.tv_distance(dist) < 0.02


def test_sample_config_torus_lands_on_sphere():
    grid = TorusGrid(5, 2)
    dist = uniform_distances(grid.max_distance)
    rng = np.random.default_rng(29)
    pooled = np.zeros(grid.max_distance + 1)
    for _ in range(80):
        cfg = sample_config(dist, grid, rng)
        lengths = cfg.distances(grid)
        pooled += np.bincount(lengths, minlength=grid.max_distance + 1)
    freq = pooled[1:] / pooled.sum()
    se = np.sqrt(dist.probs * (1 - dist.probs) / pooled.sum())
    assert np.all(np.abs(freq - dist.probs) <= 4 * se)


def test_sample_config_support_mismatch():
    with pytest.raises(ValueError):
        sample_config(uniform_distances(3), CycleTopology(8), np.random.default_rng(0))


def test_empirical_marginal_exact_counts():
    topo = CycleTopology(4)
    cfg = ShortcutConfig(np.array([3, 0, 0, 0]))
    # lengths 1, 1, 2, 3
    marg = empirical_marginal([cfg], topo)
    assert np.allclose(marg.probs, [0.5, 0.25, 0.25])
    with pytest.raises(ValueError):
        empirical_marginal([ShortcutConfig(np.array([-1, 0, 0, 0]))], topo)
    with pytest.raises(ValueError):
        empirical_marginal([], topo)
