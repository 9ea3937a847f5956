import math

import numpy as np
import pytest

from rggbetween.analytic import g_star
from rggbetween.errors import ConfigError, InsufficientData, InvalidDomain
from rggbetween.experiment import (
    ExperimentConfig,
    RadialProfile,
    compare_to_continuum,
    convergence_study,
    radial_bins,
    realize,
    run_density,
)
from rggbetween.geometry import Disk, Point, Rectangle
from rggbetween.rgg import is_connected
from rggbetween.rng import stream

SMALL = ExperimentConfig(densities=(10.0,), realizations=12, bins=10, min_count=1)


def _profile(normalized, counts, bins):
    edges = np.linspace(0, 1, bins + 1)
    return RadialProfile(edges, normalized, normalized, counts, np.zeros(bins), 1.0, 1, 1, np.zeros(1))


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig(realizations=0)
    with pytest.raises(ConfigError):
        ExperimentConfig(densities=(10.0, -1.0))
    with pytest.raises(ConfigError):
        ExperimentConfig(beta_mode="fixed")
    with pytest.raises(ConfigError):
        ExperimentConfig(beta_mode="adaptive")
    with pytest.raises(ConfigError):
        ExperimentConfig(eta=0.5)


def test_radial_bins_edges():
    d = Disk(2.0, Point(1.0, -1.0))
    pos = np.array([[1.0, -1.0], [3.0, -1.0], [1.0, 0.0], [1.0 + 2 * 0.0999, -1.0]])
    eps, idx = radial_bins(d, pos, 10)
    np.testing.assert_allclose(eps, [0.0, 1.0, 0.5, 0.0999])
    assert idx.tolist() == [0, 9, 5, 0]


def test_three_node_bookkeeping():
    cfg = ExperimentConfig(densities=(3 / math.pi,), realizations=5, bins=4, min_count=1)
    p = run_density(cfg, 3 / math.pi)
    assert p.n_nodes == 3
    assert p.counts.sum() == 15
    assert p.all_connected
    # a connected 3-node graph is a path (one centre with gamma 1) or a triangle
    total = np.nansum(p.mean_gamma * p.counts)
    assert total == pytest.approx(round(total)) and 0 <= total <= 5


def test_realize_threshold_connected():
    rng = stream(0, 0, 3)
    beta, g = realize(SMALL, 50.0, rng)
    assert g.n == round(50 * math.pi)
    assert is_connected(g) and beta > 0


def test_realize_fixed_beta():
    cfg = ExperimentConfig(densities=(50.0,), beta_mode="fixed", beta=40.0, realizations=2)
    beta, g = realize(cfg, 50.0, stream(0, 0, 0))
    assert beta == 40.0 and g.model.beta == 40.0


def test_determinism_across_workers():
    a = run_density(SMALL, 10.0, workers=1)
    b = run_density(SMALL, 10.0, workers=4)
    for f in ("mean_gamma", "normalized", "counts", "betas"):
        assert np.array_equal(getattr(a, f), getattr(b, f), equal_nan=True)


def test_seed_changes_output():
    a = run_density(SMALL, 10.0)
    b = run_density(ExperimentConfig(densities=(10.0,), realizations=12, bins=10, master_seed=1), 10.0)
    assert not np.array_equal(a.betas, b.betas)


def test_normalized_peak_is_one():
    p = run_density(SMALL, 10.0)
    assert np.nanmax(p.normalized) == 1.0
    assert p.counts.sum() == SMALL.realizations * p.n_nodes


def test_exact_continuum_gives_zero_residuals():
    p = _profile(np.zeros(50), np.full(50, 100), 50)
    p.normalized[:] = g_star(p.bin_centers)
    cmp = compare_to_continuum(p)
    assert cmp.linf == 0.0 and cmp.l2 == 0.0


def test_residual_norms_use_only_populated_bins():
    bins = 4
    centers = (np.arange(bins) + 0.5) / bins
    norm = g_star(centers) + np.array([0.1, -0.2, 0.0, 5.0])
    cmp = compare_to_continuum(_profile(norm, np.array([60, 60, 60, 3]), bins), min_count=50)
    assert cmp.used.tolist() == [True, True, True, False]
    assert cmp.linf == pytest.approx(0.2)
    assert cmp.l2 == pytest.approx(math.sqrt((0.01 + 0.04) / 3))
    assert math.isnan(cmp.residuals[3])


def test_insufficient_data():
    with pytest.raises(InsufficientData):
        compare_to_continuum(_profile(np.ones(4), np.array([1, 2, 3, 4]), 4), min_count=50)


def test_non_disk_domain_rejected():
    cfg = ExperimentConfig(domain=Rectangle(width=1.0, height=1.0), densities=(10.0,), realizations=2)
    with pytest.raises(InvalidDomain):
        run_density(cfg, 10.0)


def test_single_density_table():
    t = convergence_study(SMALL)
    assert len(t.rows) == 1 and t.strictly_decreasing
    assert t.rows[0].realizations == 12


def test_repeated_density_rows_agree_within_noise():
    cfg = ExperimentConfig(densities=(50.0, 50.0), realizations=40, bins=20, min_count=50)
    t = convergence_study(cfg)
    a, b = t.profiles
    assert not np.array_equal(a.betas, b.betas)
    ok = (a.counts >= 50) & (b.counts >= 50)
    diff = np.abs(a.mean_gamma - b.mean_gamma)[ok]
    tol = 4 * np.hypot(a.stderr, b.stderr)[ok]
    assert np.mean(diff <= tol) > 0.9


def test_fixed_beta_mode_runs():
    cfg = ExperimentConfig(densities=(50.0,), realizations=4, bins=10, beta_mode="fixed", beta=30.0, min_count=1)
    p = run_density(cfg, 50.0)
    assert np.all(p.betas == 30.0)


@pytest.mark.slow
def test_dense_profile_shape(fig3_table):
    table, _ = fig3_table
    p = table.profiles[-1]
    assert p.rho == 500.0 and p.all_connected
    ok = p.counts >= 50
    m, s = p.mean_gamma[ok], p.stderr[ok]
    # monotone outward up to sampling noise
    assert np.all(np.diff(m) <= 2 * np.hypot(s[1:], s[:-1]))
    # the peak sits near the centre; inner bins are sparse, so allow noise
    assert p.bin_centers[np.argmax(p.normalized)] < 0.2
    top = np.nanmax(p.mean_gamma)
    inner = slice(0, 5)
    assert np.all(np.abs(p.normalized[inner] - 1) <= 3 * p.stderr[inner] / top)
