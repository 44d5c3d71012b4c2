from math import sqrt

import numpy as np
import pytest

from oracles import brute_force_hitting
from swlab import (
    CycleTopology,
    DistanceDistribution,
    FreshShortcuts,
    TorusGrid,
    balance_map,
    greedy_walk,
    harmonic_cycle,
    hitting_profile_cycle,
    hitting_profile_general,
    solve_balanced,
    solve_balanced_general,
    tau,
    uniform_distances,
)

GOLDEN = (sqrt(5.0) - 1.0) / 2.0


def test_uniform_n3_hand_values():
    # h(2) = 1/2, h(1) = h(2) * l(1) + 1/2 = 3/4
    profile = hitting_profile_cycle(uniform_distances(2), 3)
    assert profile.h == pytest.approx([0.75, 0.5], abs=1e-15)
    assert profile.tau == pytest.approx(1.25, abs=1e-15)
    assert tau(profile) == profile.tau


def test_recursion_matches_brute_force():
    cases = [
        (3, np.array([0.5, 0.5])),
        (4, np.array([0.5, 0.3, 0.2])),
        (5, np.array([0.15, 0.35, 0.3, 0.2])),
    ]
    for n, probs in cases:
        exact = hitting_profile_cycle(DistanceDistribution(probs), n).h
        brute = brute_force_hitting(probs, n)
        assert np.abs(exact - brute).max() <= 1e-12


def test_profile_boundary_and_monotonicity():
    n = 40
    rng = np.random.default_rng(11)
    for _ in range(20):
        probs = rng.dirichlet(np.full(n - 1, 0.7))
        profile = hitting_profile_cycle(DistanceDistribution(probs), n)
        assert profile.h[-1] == pytest.approx(1.0 / (n - 1), abs=1e-15)
        assert np.all(np.diff(profile.h) <= 1e-12)
        assert profile.h[0] <= 1.0 + 1e-12


def test_balanced_n3_is_golden_section():
    report = solve_balanced(3, tol=1e-13)
    assert report.converged
    assert report.result.probs[0] == pytest.approx(GOLDEN, abs=1e-12)
    assert report.result.probs[1] == pytest.approx(1.0 - GOLDEN, abs=1e-12)
    # tau at the fixed point solves 2 tau = l*(1) + 2
    assert report.tau == pytest.approx((sqrt(5.0) + 3.0) / 4.0, abs=1e-12)


def test_solve_balanced_is_a_fixed_point():
    report = solve_balanced(32)
    assert report.converged
    again = balance_map(report.result, 32)
    assert report.result.tv_distance(again) <= 1e-12
    # balanced shortcut mass inherits the monotonicity of h
    assert np.all(np.diff(report.result.probs) <= 1e-15)
    assert report.tau == pytest.approx(hitting_profile_cycle(report.result, 32).tau, abs=1e-15)


def test_solver_honest_when_capped():
    report = solve_balanced(64, max_iters=1)
    assert not report.converged
    assert report.iterations == 1
    assert report.final_tv > 1e-12


def test_solver_damping_reaches_same_point():
    plain = solve_balanced(16)
    damped = solve_balanced(16, damping=0.5)
    assert damped.converged
    assert plain.result.tv_distance(damped.result) <= 1e-10


def test_solver_validation():
    with pytest.raises(ValueError):
        solve_balanced(1)
    with pytest.raises(ValueError):
        solve_balanced(8, tol=0.0)
    with pytest.raises(ValueError):
        solve_balanced(8, max_iters=0)
    with pytest.raises(ValueError):
        solve_balanced(8, damping=1.0)


def test_general_recursion_reduces_to_cycle():
    n = 9
    rng = np.random.default_rng(4)
    probs = rng.dirichlet(np.ones(n - 1))
    dist = DistanceDistribution(probs)
    topo = CycleTopology(n)
    general = hitting_profile_general(dist, topo)
    cycle = hitting_profile_cycle(dist, n)
    assert general.index == "vertex"
    assert np.abs(general.pooled_by_distance(topo) - cycle.h).max() <= 1e-12
    assert general.tau == pytest.approx(cycle.tau, abs=1e-12)


def test_general_recursion_against_monte_carlo_torus():
    grid = TorusGrid(5, 2)
    rng = np.random.default_rng(8)
    probs = rng.dirichlet(np.ones(grid.max_distance))
    dist = DistanceDistribution(probs)
    profile = hitting_profile_general(dist, grid)

    walks = 60_000
    visits = np.zeros(grid.n)
    wrng = np.random.default_rng(80)
    fresh = FreshShortcuts(dist, grid, wrng)
    for _ in range(walks):
        start = 1 + int(wrng.integers(0, grid.n - 1))
        fresh.reset()
        walk = greedy_walk(grid, fresh, start, 0, wrng)
        for v in walk.path[:-1]:
            visits[v] += 1
    freq = visits[1:] / walks
    se = np.sqrt(profile.h * (1 - profile.h) / walks)
    assert np.all(np.abs(freq - profile.h) <= 5 * se + 1e-9)


def test_solve_balanced_general_on_cycle_agrees():
    a = solve_balanced(16, tol=1e-11)
    b = solve_balanced_general(CycleTopology(16), tol=1e-11)
    assert b.converged
    assert a.result.tv_distance(b.result) <= 1e-9
    assert b.tau == pytest.approx(a.tau, abs=1e-8)


def test_solve_balanced_general_torus_fixed_point():
    grid = TorusGrid(7, 2)
    report = solve_balanced_general(grid, tol=1e-11)
    assert report.converged
    profile = hitting_profile_general(report.result, grid)
    pooled = profile.pooled_by_distance(grid)
    assert report.result.tv_distance(DistanceDistribution(pooled / pooled.sum())) <= 1e-10
    assert report.tau == pytest.approx(profile.tau, abs=1e-12)


def test_report_csv(tmp_path):
    report = solve_balanced(8)
    path = report.write_report(tmp_path / "report.csv", 8)
    text = path.read_text()
    lines = text.strip().split("\n")
    assert lines[0] == "n,iterations,final_tv,converged,tau"
    fields = lines[1].split(",")
    assert fields[0] == "8"
    assert fields[3] == "true"
    assert float(fields[4]) == pytest.approx(report.tau, abs=1e-15)
