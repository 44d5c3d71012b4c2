"""Independent reference implementations used to pin expected values.

Everything here is deliberately written the slow, obvious way, sharing no
code with the package, so agreement between the two is meaningful.
"""

import itertools

import numpy as np


def brute_force_hitting(probs, n):
    """Hitting probabilities on the directed n-cycle by full enumeration.

    Sums over every one of the (n - 1)**n shortcut configurations, weighting
    each by its probability under probs, and walks deterministically from
    every start toward destination 0.  Returns h indexed by distance 1..n-1.
    Only feasible for tiny n.
    """
    probs = np.asarray(probs, dtype=float)
    h = np.zeros(n)
    for cfg in itertools.product(range(1, n), repeat=n):
        weight = float(np.prod([probs[s - 1] for s in cfg]))
        visits = np.zeros(n)
        for start in range(1, n):
            cur = start
            while cur != 0:
                visits[cur] += 1
                s = cfg[cur]
                cur = cur - s if s <= cur else cur - 1
        h += weight * visits / (n - 1)
    return h[1:]


def cycle_walk_visited(config, y, z, n):
    """Non-terminal vertices of the deterministic greedy walk y -> z.

    config maps each vertex to its shortcut target, or -1 for none.  The
    shortcut is taken whenever it does not overshoot the destination.
    """
    cur = y
    d = (y - z) % n
    visited = []
    while d:
        g = config[cur]
        if g >= 0:
            s = (cur - g) % n
            if s <= d:
                visited.append(cur)
                cur = g
                d -= s
                continue
        visited.append(cur)
        cur = (cur - 1) % n
        d -= 1
    return visited


def chain_transition_matrix(n, p):
    """Exact one-step matrix of the rewiring chain over complete configs.

    States are tuples (target of vertex 0, ..., target of vertex n-1) with
    every target present.  Start/destination pairs are uniform over n**2
    choices, and each visited vertex independently re-points with
    probability p.  Returns (states, T).  Exponential in n; keep n tiny.
    """
    states = list(itertools.product(*([v for v in range(n) if v != x] for x in range(n))))
    index = {s: i for i, s in enumerate(states)}
    T = np.zeros((len(states), len(states)))
    for ai, state in enumerate(states):
        for y in range(n):
            for z in range(n):
                if y == z:
                    T[ai, ai] += 1.0 / n**2
                    continue
                visited = cycle_walk_visited(state, y, z, n)
                for flips in itertools.product((0, 1), repeat=len(visited)):
                    out = list(state)
                    pr = 1.0
                    for v, f in zip(visited, flips):
                        pr *= p if f else 1.0 - p
                        if f:
                            out[v] = z
                    T[ai, index[tuple(out)]] += pr / n**2
    return states, T


def stationary_distribution(T):
    """Left eigenvector of T for eigenvalue 1, normalized to a distribution."""
    w, vecs = np.linalg.eig(T.T)
    pi = np.real(vecs[:, np.argmax(np.real(w))])
    pi = np.abs(pi)
    return pi / pi.sum()
