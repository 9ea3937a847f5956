"""Reference policies built on positional betweenness.

* boundary detection, either from position (via g*) or from a measured
  betweenness vector;
* cluster-head election by betweenness rank;
* an adaptive connection range ``r0 = 1 / sqrt(beta(eps))`` that grows as
  the expected load falls.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .analytic import DiskContinuum, g_star, invert_g_star
from .centrality import BetweennessVector, betweenness_brandes, normalize
from .errors import DegenerateN, OutOfDomain
from .geometry import Disk
from .rgg import Graph

MAX_BETWEENNESS = "max"
MIN_BETWEENNESS = "min"
DEFAULT_THRESHOLD = 0.1
DEFAULT_FLOOR = 0.01


@dataclass(frozen=True)
class BoundaryPartition:
    eps: np.ndarray
    g_star_est: np.ndarray
    gamma_norm: np.ndarray
    is_boundary_pos: np.ndarray
    is_boundary_meas: np.ndarray

    @property
    def boundary(self) -> np.ndarray:
        return np.flatnonzero(self.is_boundary_pos)

    @property
    def interior(self) -> np.ndarray:
        return np.flatnonzero(~self.is_boundary_pos)

    @property
    def agreement(self) -> float:
        """Fraction of nodes on which both detectors agree."""
        return float(np.mean(self.is_boundary_pos == self.is_boundary_meas))


def _center(g: Graph) -> np.ndarray:
    return g.domain.center.as_array() if isinstance(g.domain, Disk) else np.zeros(2)


def detect_boundary(g: Graph, disk: DiskContinuum, threshold: float = DEFAULT_THRESHOLD,
                    gamma: np.ndarray | None = None) -> BoundaryPartition:
    """Flag nodes whose expected (position mode) or measured (measurement mode) load is below ``threshold``.

    The measured load is the pair-normalized betweenness divided by its
    maximum over the graph.
    """
    if not 0.0 < threshold < 1.0:
        raise OutOfDomain("threshold must lie strictly between 0 and 1")
    if g.n < 3:
        raise DegenerateN(f"measurement mode needs N >= 3, got {g.n}")
    eps = np.hypot(*(g.positions - _center(g)).T) / disk.R
    gs = g_star(np.clip(eps, 0.0, 1.0))
    raw = betweenness_brandes(g) if gamma is None else BetweennessVector(np.asarray(gamma, dtype=float))
    pair = normalize(raw).values
    top = pair.max()
    gamma_norm = pair / top if top > 0 else np.zeros_like(pair)
    return BoundaryPartition(eps, gs, gamma_norm, gs < threshold, gamma_norm < threshold)


def boundary_radius(threshold: float) -> float:
    """Scaled radius beyond which the position detector flags a node."""
    return invert_g_star(threshold)


def elect_cluster_heads(g: Graph, k: int, mode: str = MAX_BETWEENNESS,
                        gamma: np.ndarray | None = None) -> list[int]:
    """Top-k (or bottom-k) nodes by betweenness, ties broken by lower index."""
    if not 1 <= k <= g.n:
        raise ValueError(f"k must lie in [1, {g.n}], got {k}")
    gamma = betweenness_brandes(g).values if gamma is None else np.asarray(gamma, dtype=float)
    if mode == MAX_BETWEENNESS:
        order = np.argsort(-gamma, kind="stable")
    elif mode == MIN_BETWEENNESS:
        order = np.argsort(gamma, kind="stable")
    else:
        raise ValueError(f"unknown election mode {mode!r}")
    return [int(i) for i in order[:k]]


def floor_map(floor: float = DEFAULT_FLOOR) -> Callable[[float], float]:
    return lambda x: max(x, floor)


def adaptive_range(eps: float, f: Callable[[float], float] | None = None, beta0: float = 1.0) -> float:
    """Connection range ``1 / sqrt(beta0 * f(g*(eps)))``."""
    if not 0.0 <= eps <= 1.0:
        raise OutOfDomain("eps must lie in [0, 1]")
    f = floor_map() if f is None else f
    beta = beta0 * f(float(g_star(eps)))
    if not beta > 0:
        raise OutOfDomain(f"range map produced non-positive beta {beta}")
    return float(1.0 / np.sqrt(beta))
