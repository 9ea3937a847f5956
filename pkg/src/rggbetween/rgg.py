"""Soft random geometric graphs.

Nodes are placed uniformly in a domain and every unordered pair ``(i, j)`` is
linked independently with probability ``H(r_ij)``.  Link decisions use one
uniform ``u_ij`` per pair, drawn in lexicographic ``i < j`` order, and the
edge exists iff ``u_ij <= H(r_ij)``.  With the soft exponential law this
couples all values of ``beta`` on one draw: the edge is present iff
``beta <= -ln(u_ij) / r_ij**eta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numba
import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import DegenerateDistance, InvalidDomain
from .geometry import Domain, sample_uniform


@dataclass(frozen=True)
class SoftExponential:
    beta: float
    eta: float = 2.0

    def __post_init__(self):
        if not self.beta > 0:
            raise InvalidDomain(f"beta must be positive, got {self.beta}")
        if not self.eta >= 1:
            raise InvalidDomain(f"eta must be >= 1, got {self.eta}")


@dataclass(frozen=True)
class HardDisk:
    r0: float

    def __post_init__(self):
        if not self.r0 > 0:
            raise InvalidDomain(f"range must be positive, got {self.r0}")


ConnectionModel = SoftExponential | HardDisk


def link_probability(m: ConnectionModel, r):
    """``exp(-beta r^eta)`` for the soft law, the indicator ``r <= r0`` for hard disks."""
    r = np.asarray(r, dtype=float)
    if isinstance(m, HardDisk):
        out = (r <= m.r0).astype(float)
    else:
        out = np.exp(-m.beta * r**m.eta)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Graph:
    positions: np.ndarray
    edges: np.ndarray
    domain: Domain | None = None
    rho: float | None = None
    model: ConnectionModel | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float).reshape(-1, 2)
        e = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if len(e):
            if np.any(e[:, 0] == e[:, 1]):
                raise ValueError("self-loops are not allowed")
            if e.min() < 0 or e.max() >= len(pos):
                raise ValueError("edge endpoint out of range")
            e = np.unique(np.sort(e, axis=1), axis=0)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "edges", e)

    @property
    def n(self) -> int:
        return len(self.positions)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)`` of the symmetric adjacency, neighbours sorted."""
        n = self.n
        src = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        dst = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        order = np.lexsort((dst, src))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return indptr, dst[order].astype(np.int64)

    def neighbors(self, i: int) -> np.ndarray:
        indptr, indices = self.csr
        return indices[indptr[i] : indptr[i + 1]]

    @property
    def degree(self) -> np.ndarray:
        return np.diff(self.csr[0])


def pair_distances(positions: np.ndarray):
    """Pair index arrays in lexicographic ``i < j`` order and their distances."""
    i, j = np.triu_indices(len(positions), 1)
    d = positions[j] - positions[i]
    return i, j, np.hypot(d[:, 0], d[:, 1])


def node_count(d: Domain, rho: float) -> int:
    return int(round(rho * d.area))


def connect(positions: np.ndarray, m: ConnectionModel, rng: np.random.Generator,
            domain: Domain | None = None, rho: float | None = None) -> Graph:
    """Link every pair of ``positions`` independently under ``m``."""
    i, j, r = pair_distances(positions)
    if isinstance(m, HardDisk):
        linked = r <= m.r0
    else:
        linked = rng.random(len(r)) <= link_probability(m, r)
    return Graph(positions, np.stack([i[linked], j[linked]], axis=1), domain, rho, m)


def sample_graph(d: Domain, rho: float, m: ConnectionModel, rng: np.random.Generator,
                 n: int | None = None) -> Graph:
    """``round(rho * area)`` uniform nodes (or ``n``), then independent links."""
    if not rho > 0:
        raise InvalidDomain(f"density must be positive, got {rho}")
    n = node_count(d, rho) if n is None else n
    return connect(sample_uniform(d, n, rng), m, rng, d, rho)


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    a = coo_matrix((np.ones(len(g.edges)), (g.edges[:, 0], g.edges[:, 1])), shape=(g.n, g.n))
    ncomp, _ = connected_components(a, directed=False)
    return ncomp == 1


def pair_betas(r: np.ndarray, u: np.ndarray, eta: float) -> np.ndarray:
    """Largest beta at which each pair is still linked; coincident points never unlink."""
    with np.errstate(divide="ignore"):
        b = -np.log(u) / r**eta
    b[r == 0] = np.inf
    return b


@numba.njit(nogil=True, cache=True)
def _kruskal_bottleneck(n, i, j, w, order):
    parent = np.arange(n)
    merged = 0
    for k in order:
        a = i[k]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = j[k]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            parent[b] = a
            merged += 1
            if merged == n - 1:
                return w[k]
    return np.nan


def bottleneck_beta(n: int, i: np.ndarray, j: np.ndarray, betas: np.ndarray) -> float:
    """Minimum edge weight on a maximum spanning tree of the pair betas."""
    order = np.argsort(-betas, kind="stable")
    return float(_kruskal_bottleneck(n, i, j, betas, order))


def beta_connectivity_threshold(positions: np.ndarray, eta: float, rng: np.random.Generator,
                                domain: Domain | None = None, rho: float | None = None):
    """Largest beta for which the coupled realization is connected.

    Returns ``(beta_star, graph)`` where ``graph`` holds every pair with
    ``beta_ij >= beta_star``.
    """
    positions = np.asarray(positions, dtype=float)
    n = len(positions)
    if n < 2:
        raise InvalidDomain("need at least two nodes for a connectivity threshold")
    i, j, r = pair_distances(positions)
    betas = pair_betas(r, rng.random(len(r)), eta)
    beta_star = bottleneck_beta(n, i, j, betas)
    if not math.isfinite(beta_star):
        raise DegenerateDistance("connectivity threshold is infinite (coincident nodes only)")
    keep = betas >= beta_star
    g = Graph(positions, np.stack([i[keep], j[keep]], axis=1), domain, rho,
              SoftExponential(beta_star, eta), meta={"beta": beta_star})
    return beta_star, g
