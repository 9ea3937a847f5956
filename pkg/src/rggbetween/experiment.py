"""Monte Carlo radial betweenness profiles on the disk.

One realization: place ``round(rho * area)`` nodes, choose ``beta`` (either
fixed or the per-realization connectivity threshold), realize the soft graph,
run Brandes, and drop every node's betweenness into a radial bin.  Each
realization owns the RNG stream ``(master_seed; density_index, realization)``
and results are merged in realization order, so the output is bit-identical
for any worker count.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analytic import g_star
from .centrality import betweenness_brandes
from .errors import ConfigError, InsufficientData, InvalidDomain
from .geometry import Disk, Domain, sample_uniform
from .rgg import (
    Graph,
    SoftExponential,
    beta_connectivity_threshold,
    connect,
    is_connected,
    node_count,
)
from .rng import stream

log = logging.getLogger(__name__)

THRESHOLD = "threshold"
FIXED = "fixed"


@dataclass(frozen=True)
class ExperimentConfig:
    domain: Domain = Disk(1.0)
    densities: tuple = (10.0, 50.0, 500.0)
    realizations: int = 500
    bins: int = 50
    eta: float = 2.0
    beta_mode: str = THRESHOLD
    beta: float | None = None
    master_seed: int = 0
    min_count: int = 50

    def __post_init__(self):
        object.__setattr__(self, "densities", tuple(float(r) for r in self.densities))
        if self.realizations < 1:
            raise ConfigError("realizations must be >= 1")
        if self.bins < 4:
            raise ConfigError("bins must be >= 4")
        if not self.densities or any(not r > 0 for r in self.densities):
            raise ConfigError("densities must be positive")
        if not self.eta >= 1:
            raise ConfigError("eta must be >= 1")
        if self.beta_mode not in (THRESHOLD, FIXED):
            raise ConfigError(f"beta_mode must be {THRESHOLD!r} or {FIXED!r}")
        if self.beta_mode == FIXED and not (self.beta is not None and self.beta > 0):
            raise ConfigError("fixed beta mode needs a positive beta")


@dataclass(frozen=True)
class RadialProfile:
    bin_edges: np.ndarray
    mean_gamma: np.ndarray
    normalized: np.ndarray
    counts: np.ndarray
    stderr: np.ndarray
    rho: float
    realizations: int
    n_nodes: int
    betas: np.ndarray = field(repr=False)
    all_connected: bool = True

    @property
    def bin_centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])


def realize(cfg: ExperimentConfig, rho: float, rng: np.random.Generator) -> tuple[float, Graph]:
    """Sample one graph under the configured beta rule.

    Positions and pair uniforms come from two child streams of ``rng``.
    """
    d = cfg.domain
    pos_rng, pair_rng = rng.spawn(2)
    pos = sample_uniform(d, node_count(d, rho), pos_rng)
    if cfg.beta_mode == THRESHOLD:
        return beta_connectivity_threshold(pos, cfg.eta, pair_rng, d, rho)
    return cfg.beta, connect(pos, SoftExponential(cfg.beta, cfg.eta), pair_rng, d, rho)


def radial_bins(domain: Disk, positions: np.ndarray, bins: int) -> tuple[np.ndarray, np.ndarray]:
    """Scaled displacement ``eps`` and bin index per node; ``eps == 1`` lands in the last bin."""
    eps = np.hypot(*(positions - domain.center.as_array()).T) / domain.radius
    idx = np.minimum((eps * bins).astype(np.int64), bins - 1)
    return eps, idx


def _one_realization(cfg, rho, stream_index, k):
    rng = stream(cfg.master_seed, stream_index, k)
    beta, g = realize(cfg, rho, rng)
    gamma = betweenness_brandes(g).values
    _, idx = radial_bins(cfg.domain, g.positions, cfg.bins)
    s = np.bincount(idx, weights=gamma, minlength=cfg.bins)
    s2 = np.bincount(idx, weights=gamma * gamma, minlength=cfg.bins)
    c = np.bincount(idx, minlength=cfg.bins)
    connected = cfg.beta_mode != THRESHOLD or is_connected(g)
    return s, s2, c, beta, connected


def run_density(cfg: ExperimentConfig, rho: float, stream_index: int = 0, workers: int = 1) -> RadialProfile:
    d = cfg.domain
    if not isinstance(d, Disk):
        raise InvalidDomain("radial profiles are defined for disk domains only")

    def task(k):
        return _one_realization(cfg, rho, stream_index, k)

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            results = list(ex.map(task, range(cfg.realizations)))
    else:
        results = [task(k) for k in range(cfg.realizations)]

    sums = np.zeros(cfg.bins)
    sums2 = np.zeros(cfg.bins)
    counts = np.zeros(cfg.bins, dtype=np.int64)
    for s, s2, c, _, _ in results:
        sums += s
        sums2 += s2
        counts += c
    with np.errstate(invalid="ignore", divide="ignore"):
        mean = sums / counts
        var = (sums2 - counts * mean * mean) / (counts - 1)
        stderr = np.sqrt(np.maximum(var, 0.0) / counts)
    stderr[counts < 2] = np.nan
    normalized = mean / np.nanmax(mean)
    log.info("rho=%g: %d realizations, %d nodes each", rho, cfg.realizations, node_count(d, rho))
    return RadialProfile(
        bin_edges=np.linspace(0.0, 1.0, cfg.bins + 1),
        mean_gamma=mean,
        normalized=normalized,
        counts=counts,
        stderr=stderr,
        rho=rho,
        realizations=cfg.realizations,
        n_nodes=node_count(d, rho),
        betas=np.array([r[3] for r in results]),
        all_connected=all(r[4] for r in results),
    )


@dataclass(frozen=True)
class ContinuumComparison:
    residuals: np.ndarray
    used: np.ndarray
    linf: float
    l2: float


def compare_to_continuum(p: RadialProfile, min_count: int = 50) -> ContinuumComparison:
    """Residual ``normalized - g*(bin centre)`` over bins with at least ``min_count`` samples.

    ``l2`` is the root-mean-square residual over those bins.
    """
    used = p.counts >= min_count
    if not used.any():
        raise InsufficientData(f"no bin has {min_count} or more samples")
    res = np.where(used, p.normalized - g_star(p.bin_centers), np.nan)
    r = res[used]
    return ContinuumComparison(res, used, float(np.max(np.abs(r))), float(math.sqrt(np.mean(r * r))))


@dataclass(frozen=True)
class ConvergenceRow:
    rho: float
    realizations: int
    linf: float
    l2: float


@dataclass(frozen=True)
class ConvergenceTable:
    rows: list
    profiles: list = field(repr=False)

    @property
    def strictly_decreasing(self) -> bool:
        linf = [r.linf for r in self.rows]
        return all(b < a for a, b in zip(linf, linf[1:]))


def convergence_study(cfg: ExperimentConfig, workers: int = 1) -> ConvergenceTable:
    """One profile per configured density, each on its own stream index."""
    rows, profiles = [], []
    for idx, rho in enumerate(cfg.densities):
        p = run_density(cfg, rho, stream_index=idx, workers=workers)
        cmp = compare_to_continuum(p, cfg.min_count)
        rows.append(ConvergenceRow(rho, cfg.realizations, cmp.linf, cmp.l2))
        profiles.append(p)
    table = ConvergenceTable(rows, profiles)
    if len(rows) > 1 and not table.strictly_decreasing:
        log.warning("L-inf error is not strictly decreasing along the density ladder")
    return table
