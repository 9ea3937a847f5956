import itertools
import math

import numpy as np
import pytest

from conftest import bisect_threshold
from rggbetween.errors import DegenerateDistance
from rggbetween.geometry import Disk, Rectangle
from rggbetween.rgg import (
    Graph,
    HardDisk,
    SoftExponential,
    beta_connectivity_threshold,
    bottleneck_beta,
    connect,
    is_connected,
    link_probability,
    pair_betas,
    pair_distances,
    sample_graph,
)


def test_link_probability_examples():
    m = SoftExponential(beta=1.0, eta=2.0)
    assert link_probability(m, 0.0) == 1.0
    assert link_probability(m, 1.0) == pytest.approx(0.36787944117144233, abs=1e-15)
    h = HardDisk(0.3)
    assert link_probability(h, 0.3) == 1.0
    assert link_probability(h, 0.3000001) == 0.0


def test_soft_law_strictly_decreasing():
    r = np.linspace(0, 3, 200)
    p = link_probability(SoftExponential(2.0, 2.0), r)
    assert np.all(np.diff(p) < 0)


def test_graph_invariants():
    g = Graph(np.zeros((4, 2)), [(1, 0), (0, 1), (2, 3)])
    assert g.edges.tolist() == [[0, 1], [2, 3]]
    assert g.neighbors(0).tolist() == [1]
    with pytest.raises(ValueError):
        Graph(np.zeros((2, 2)), [(1, 1)])


def test_single_node_graph():
    g = sample_graph(Disk(1.0), 1 / math.pi, SoftExponential(1.0), np.random.default_rng(0))
    assert g.n == 1 and len(g.edges) == 0
    assert is_connected(g)


def test_node_count_is_rounded_density_times_area():
    g = sample_graph(Rectangle(width=2.0, height=1.5), 10.0, HardDisk(0.1), np.random.default_rng(0))
    assert g.n == 30


def test_hard_disk_beyond_diameter_is_complete():
    d = Disk(1.0)
    g = sample_graph(d, 5.0, HardDisk(2.0 + 1e-9), np.random.default_rng(1))
    assert len(g.edges) == g.n * (g.n - 1) // 2


def test_hard_disk_is_exact_threshold():
    pts = np.random.default_rng(2).random((60, 2))
    g = connect(pts, HardDisk(0.2), np.random.default_rng(0))
    i, j, r = pair_distances(pts)
    assert {tuple(e) for e in g.edges.tolist()} == {(a, b) for a, b, x in zip(i, j, r) if x <= 0.2}


def test_soft_edge_count_within_poisson_binomial_spread():
    d = Rectangle(width=1.0, height=1.0)
    rng = np.random.default_rng(3)
    m = SoftExponential(beta=20.0)
    g = sample_graph(d, 100.0, m, rng)
    _, _, r = pair_distances(g.positions)
    p = link_probability(m, r)
    mean, sd = p.sum(), math.sqrt(np.sum(p * (1 - p)))
    assert abs(len(g.edges) - mean) < 4 * sd


def test_is_connected_examples():
    assert is_connected(Graph(np.zeros((1, 2)), np.empty((0, 2))))
    assert not is_connected(Graph(np.zeros((2, 2)), np.empty((0, 2))))
    assert is_connected(Graph(np.zeros((5, 2)), [(0, 1), (1, 2), (2, 3), (3, 4)]))


def test_threshold_two_nodes():
    pts = np.array([[0.0, 0.0], [0.3, 0.4]])
    u = np.random.default_rng(8).random(1)[0]
    beta, g = beta_connectivity_threshold(pts, 2.0, np.random.default_rng(8))
    assert beta == pytest.approx(-math.log(u) / 0.25, rel=1e-15)
    assert g.edges.tolist() == [[0, 1]]


def test_threshold_three_collinear_equal_uniforms():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
    i, j, r = pair_distances(pts)
    betas = pair_betas(r, np.full(3, 0.5), 2.0)
    # enumerate: connected at beta iff at least two of the three links survive
    crit = sorted(betas)
    brute = max(b for b in crit if sum(x >= b for x in betas) >= 2)
    assert brute == pytest.approx(math.log(2.0), rel=1e-15)
    assert bottleneck_beta(3, i, j, betas) == brute


@pytest.mark.parametrize("seed", range(10))
def test_threshold_graph_connected_and_critical(seed):
    rng = np.random.default_rng(seed)
    pts = rng.random((40, 2))
    beta, g = beta_connectivity_threshold(pts, 2.0, np.random.default_rng(100 + seed))
    assert is_connected(g)
    i, j, r = pair_distances(pts)
    betas = pair_betas(r, np.random.default_rng(100 + seed).random(len(r)), 2.0)
    keep = betas >= beta * (1 + 1e-9)
    above = Graph(pts, np.stack([i[keep], j[keep]], axis=1))
    assert not is_connected(above)


@pytest.mark.parametrize("seed", range(20))
def test_threshold_matches_bisection(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 51))
    pts = rng.random((n, 2)) * 3
    i, j, r = pair_distances(pts)
    betas = pair_betas(r, rng.random(len(r)), 2.0)
    got = bottleneck_beta(n, i, j, betas)
    assert got == pytest.approx(bisect_threshold(i, j, betas, n), rel=1e-9)


def test_coupling_is_monotone():
    rng = np.random.default_rng(4)
    pts = rng.random((50, 2))
    i, j, r = pair_distances(pts)
    betas = pair_betas(r, rng.random(len(r)), 2.0)
    for b1, b2 in itertools.combinations(sorted(rng.random(6) * 50), 2):
        e1 = set(np.flatnonzero(betas >= b1))
        e2 = set(np.flatnonzero(betas >= b2))
        assert e2 <= e1


def test_coupled_soft_graph_matches_threshold_rule():
    # the same draw realizes identical edges via u <= H(r) and beta <= beta_ij
    pts = np.random.default_rng(5).random((30, 2))
    g = connect(pts, SoftExponential(12.0), np.random.default_rng(6))
    i, j, r = pair_distances(pts)
    betas = pair_betas(r, np.random.default_rng(6).random(len(r)), 2.0)
    keep = betas >= 12.0
    assert g.edges.tolist() == np.stack([i[keep], j[keep]], axis=1).tolist()


def test_coincident_points():
    with pytest.raises(DegenerateDistance):
        beta_connectivity_threshold(np.zeros((2, 2)), 2.0, np.random.default_rng(0))
    pts = np.array([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
    beta, g = beta_connectivity_threshold(pts, 2.0, np.random.default_rng(0))
    assert math.isfinite(beta) and is_connected(g)
    assert [0, 1] in g.edges.tolist()


def test_sample_graph_deterministic():
    a = sample_graph(Disk(1.0), 30.0, SoftExponential(10.0), np.random.default_rng(7))
    b = sample_graph(Disk(1.0), 30.0, SoftExponential(10.0), np.random.default_rng(7))
    assert np.array_equal(a.positions, b.positions) and np.array_equal(a.edges, b.edges)
