"""Shortest-path betweenness on unweighted graphs.

``gamma(k)`` sums, over unordered pairs ``{i, j}`` with ``k`` not an endpoint,
the fraction of hop-count geodesics from ``i`` to ``j`` passing through ``k``.
Pairs in different components contribute nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .errors import DegenerateN, TooLarge
from .rgg import Graph

RAW = "raw"
PAIR = "pair"

BRUTEFORCE_MAX_N = 12


@dataclass(frozen=True)
class BetweennessVector:
    values: np.ndarray
    normalization: str = RAW

    def __len__(self):
        return len(self.values)


@numba.njit(nogil=True, cache=True)
def _brandes_csr(indptr, indices):
    n = len(indptr) - 1
    bc = np.zeros(n)
    dist = np.empty(n, dtype=np.int64)
    sigma = np.empty(n)
    delta = np.empty(n)
    order = np.empty(n, dtype=np.int64)
    for s in range(n):
        dist[:] = -1
        sigma[:] = 0.0
        delta[:] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head, tail = 0, 1
        while head < tail:
            v = order[head]
            head += 1
            for k in range(indptr[v], indptr[v + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    order[tail] = w
                    tail += 1
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
        # reverse BFS order: every successor of w is final before w is read
        for idx in range(tail - 1, 0, -1):
            w = order[idx]
            coeff = (1.0 + delta[w]) / sigma[w]
            for k in range(indptr[w], indptr[w + 1]):
                v = indices[k]
                if dist[v] == dist[w] - 1:
                    delta[v] += sigma[v] * coeff
            bc[w] += delta[w]
    # each unordered pair was visited from both ends
    return bc / 2.0


def betweenness_brandes(g: Graph) -> BetweennessVector:
    if g.n == 0:
        return BetweennessVector(np.zeros(0))
    indptr, indices = g.csr
    return BetweennessVector(_brandes_csr(indptr, indices))


def _geodesics(adj: list[set[int]], s: int, t: int) -> list[tuple[int, ...]]:
    """All minimum-length simple paths from s to t by iterative deepening."""
    n = len(adj)
    for length in range(1, n):
        found = []
        stack = [(s,)]
        while stack:
            path = stack.pop()
            last = path[-1]
            if len(path) - 1 == length:
                if last == t:
                    found.append(path)
                continue
            for w in adj[last]:
                if w not in path:
                    stack.append(path + (w,))
        if found:
            return found
    return []


def betweenness_bruteforce(g: Graph) -> BetweennessVector:
    """Exhaustive path enumeration.  Only meant as a test oracle."""
    n = g.n
    if n > BRUTEFORCE_MAX_N:
        raise TooLarge(f"brute force limited to {BRUTEFORCE_MAX_N} nodes, got {n}")
    adj = [set() for _ in range(n)]
    for a, b in g.edges:
        adj[a].add(int(b))
        adj[b].add(int(a))
    gamma = np.zeros(n)
    for s in range(n):
        for t in range(s + 1, n):
            paths = _geodesics(adj, s, t)
            for p in paths:
                for k in p[1:-1]:
                    gamma[k] += 1.0 / len(paths)
    return BetweennessVector(gamma)


def pair_count(n: int) -> float:
    return (n - 1) * (n - 2) / 2.0


def normalize(v: BetweennessVector, mode: str = PAIR) -> BetweennessVector:
    if mode == RAW:
        if v.normalization == RAW:
            return v
        return BetweennessVector(v.values * pair_count(len(v)), RAW)
    if mode != PAIR:
        raise ValueError(f"unknown normalization {mode!r}")
    if v.normalization == PAIR:
        return v
    n = len(v)
    if n < 3:
        raise DegenerateN(f"pair normalization needs N >= 3, got {n}")
    return BetweennessVector(v.values / pair_count(n), PAIR)
