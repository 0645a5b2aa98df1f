"""Independent reference implementations used to cross-check the package.

Deliberately written in the plainest possible style (loops, direct
formulas) and kept free of any package update code, so a bug in the
implementation cannot hide in its own oracle.
"""

import numpy as np

ACTION_GRID_POINTS = 100001


def quadratic_utility(candidate, updated_opinion, norm, commitment):
    own = candidate - updated_opinion
    social = candidate - norm
    return -commitment * own * own - (1.0 - commitment) * social * social


def grid_argmax_action(updated_opinion, norm, commitment, points=ACTION_GRID_POINTS):
    """Brute-force maximizer of the action utility over a uniform grid."""
    grid = np.linspace(0.0, 1.0, points)
    utilities = quadratic_utility(grid, updated_opinion, norm, commitment)
    return float(grid[int(np.argmax(utilities))])


def enumerate_neighbors(i, opinions, actions, eps, graph):
    """Direct enumeration of the bounded-confidence neighbor rule."""
    return {
        j
        for j in range(len(opinions))
        if j != i and graph.has_edge(i, j) and abs(opinions[i] - actions[j]) <= eps
    }


def reference_step(population, graph):
    """One synchronous step composed purely of scalar arithmetic."""
    n = len(population)
    x = [float(v) for v in population.opinions]
    y = [float(v) for v in population.actions]
    eps = [float(v) for v in population.openness]
    phi = [float(v) for v in population.commitment]
    norm = sum(y) / n
    x_new = []
    for i in range(n):
        nbrs = sorted(enumerate_neighbors(i, x, y, eps[i], graph))
        x_new.append((sum(y[j] for j in nbrs) + x[i]) / (len(nbrs) + 1))
    y_new = [phi[i] * x_new[i] + (1.0 - phi[i]) * norm for i in range(n)]
    return x_new, y_new
