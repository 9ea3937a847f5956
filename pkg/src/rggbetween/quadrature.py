"""Continuum betweenness for arbitrary convex domains.

With straight-line geodesics, the expected betweenness of a point ``kappa``
reduces to a single angular integral over boundary ray distances::

    g(kappa) = 1 / (4 V^2) * int_0^{2 pi} r(t) r(t + pi) (r(t) + r(t + pi)) dt

where ``r(t)`` is the distance from ``kappa`` to the boundary along ``t`` and
``V`` is the domain area.  The integrand is 2pi-periodic, so a uniform
trapezoidal rule is used; ``r(t + pi)`` is read off the same grid.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NonConvexDomain
from .geometry import TWO_PI, Domain, Point

DEFAULT_M = 8192
MIN_M = 64


def _check_m(M: int) -> int:
    M = int(M)
    if M < MIN_M or M % 2:
        raise ValueError(f"quadrature points must be even and >= {MIN_M}, got {M}")
    return M


@dataclass(frozen=True)
class RayDistanceProfile:
    origin: Point
    thetas: np.ndarray
    distances: np.ndarray

    @classmethod
    def cast(cls, d: Domain, origin, M: int) -> "RayDistanceProfile":
        M = _check_m(M)
        thetas = TWO_PI * np.arange(M) / M
        origin = origin if isinstance(origin, Point) else Point(*map(float, origin))
        return cls(origin, thetas, d.ray_distances(origin, thetas))

    @property
    def opposite(self) -> np.ndarray:
        return np.roll(self.distances, -len(self.distances) // 2)


def g_convex(d: Domain, kappa, M: int = DEFAULT_M) -> float:
    """Continuum betweenness at ``kappa`` (units 1/length)."""
    if not d.convex:
        raise NonConvexDomain("continuum quadrature assumes straight geodesics (convex domain)")
    prof = RayDistanceProfile.cast(d, kappa, M)
    r, s = prof.distances, prof.opposite
    integral = TWO_PI / len(r) * float(np.sum(r * s * (r + s)))
    return integral / (4.0 * d.area**2)


@dataclass(frozen=True)
class ContinuumField:
    domain: Domain
    points: np.ndarray
    g_values: np.ndarray
    g_star_values: np.ndarray


def field(d: Domain, points, M: int = DEFAULT_M, workers: int = 1) -> ContinuumField:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if not d.convex:
        raise NonConvexDomain("continuum field needs a convex domain")

    def one(p):
        return g_convex(d, (p[0], p[1]), M)

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            g = np.array(list(ex.map(one, pts)))
    else:
        g = np.array([one(p) for p in pts])
    gmax = g.max() if len(g) else 1.0
    return ContinuumField(d, pts, g, g / gmax)


def grid_points(d: Domain, step: float) -> np.ndarray:
    """Lattice points with spacing ``step`` strictly inside ``d``, anchored on its reference centre."""
    if not step > 0:
        raise ValueError("grid step must be positive")
    (x0, y0), (x1, y1) = d.bbox
    ax, ay = d.anchor
    xs = ax + step * np.arange(math.floor((x0 - ax) / step), math.ceil((x1 - ax) / step) + 1)
    ys = ay + step * np.arange(math.floor((y0 - ay) / step), math.ceil((y1 - ay) / step) + 1)
    X, Y = np.meshgrid(xs, ys)
    pts = np.stack([X.ravel(), Y.ravel()], axis=1)
    return pts[d.interior_margin(pts) > 1e-12 * max(1.0, d.diameter)]


@dataclass(frozen=True)
class ConvergenceReport:
    Ms: tuple[int, int, int]
    values: tuple[float, float, float]
    differences: tuple[float, float]
    observed_order: float
    extrapolated: float

    @property
    def error_estimate(self) -> float:
        return abs(self.extrapolated - self.values[-1])


def richardson_check(d: Domain, kappa, M: int = DEFAULT_M) -> ConvergenceReport:
    """Evaluate at M, 2M, 4M and extrapolate using the observed order."""
    Ms = (M, 2 * M, 4 * M)
    vals = tuple(g_convex(d, kappa, m) for m in Ms)
    d1, d2 = vals[1] - vals[0], vals[2] - vals[1]
    if d1 == 0.0 or d2 == 0.0 or abs(d2) >= abs(d1):
        # already at round-off, or not in the asymptotic regime
        order = math.inf if d2 == 0.0 else float("nan")
        extrap = vals[2]
    else:
        order = math.log2(abs(d1 / d2))
        extrap = vals[2] + d2 / (2.0**order - 1.0)
    return ConvergenceReport(Ms, vals, (d1, d2), order, extrap)
