"""Closed-form continuum betweenness for a disk.

For a node at distance ``eps`` from the centre of a disk of radius ``R``, in
the dense limit where geodesics become straight segments::

    g(eps)  = 2 (R^2 - eps^2) / (pi^2 R^3) * E(eps / R)
    g*(eps) = (2 / pi) (1 - eps^2) E(eps)          (eps in units of R)

with ``E`` the complete elliptic integral of the second kind.

The near-centre series is ``1 - (5/4) eps^2 + (13/64) eps^4 + O(eps^6)``.
Some printed versions of this result give the quadratic coefficient as 5;
expanding ``(1 - eps^2)(1 - eps^2/4 - 3 eps^4/64)`` shows it is 5/4, and the
quartic term 13/64 only comes out of that same expansion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDomain, OutOfDomain

CENTER_SERIES_MAX = 0.3
BOUNDARY_SERIES_MIN = 0.9


def _check_range(x, lo, hi, name):
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x < lo) or np.any(x > hi):
        raise OutOfDomain(f"{name} must lie in [{lo}, {hi}]")
    return x


def _scalar_or_array(x: np.ndarray):
    return float(x) if x.ndim == 0 else x


def elliptic_E(k):
    """Complete elliptic integral of the second kind, modulus ``k`` in [0, 1].

    Arithmetic-geometric mean with the Legendre correction sum
    ``E = K (1 - sum_n 2^(n-1) c_n^2)``; ``k = 1`` is returned exactly.
    """
    k = _check_range(k, 0.0, 1.0, "k")
    a = np.ones_like(k)
    b = np.sqrt((1.0 - k) * (1.0 + k))
    c2sum = 0.5 * k * k
    pow2 = 0.5
    done = np.zeros(k.shape, dtype=bool)
    for _ in range(64):
        # once c is round-off, 2^n c^2 would only amplify noise
        c = np.where(done, 0.0, 0.5 * (a - b))
        a, b = 0.5 * (a + b), np.sqrt(a * b)
        pow2 *= 2.0
        c2sum = c2sum + pow2 * c * c
        done |= np.abs(c) < 1e-9 * a
        if np.all(done):
            break
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.pi / (2.0 * a) * (1.0 - c2sum)
    out = np.where(k == 1.0, 1.0, out)
    return _scalar_or_array(out)


@dataclass(frozen=True)
class DiskContinuum:
    R: float = 1.0

    def __post_init__(self):
        if not self.R > 0:
            raise InvalidDomain(f"disk radius must be positive, got {self.R}")


def g_disk(dc: DiskContinuum, eps):
    """Unnormalized continuum betweenness at absolute distance ``eps`` (units 1/length)."""
    R = dc.R
    eps = _check_range(eps, 0.0, R, "eps")
    out = 2.0 * (R * R - eps * eps) / (np.pi**2 * R**3) * np.asarray(elliptic_E(eps / R))
    return _scalar_or_array(out)


def g_star(eps):
    """Continuum betweenness normalized to 1 at the centre; ``eps`` in units of R."""
    eps = _check_range(eps, 0.0, 1.0, "eps")
    return _scalar_or_array(2.0 / np.pi * (1.0 - eps * eps) * np.asarray(elliptic_E(eps)))


def g_star_center_expansion(eps):
    eps = _check_range(eps, 0.0, CENTER_SERIES_MAX, "eps")
    e2 = eps * eps
    return _scalar_or_array(1.0 - 1.25 * e2 + (13.0 / 64.0) * e2 * e2)


def g_star_boundary_expansion(eps):
    """Leading linear decay ``4 (1 - eps) / pi`` near the rim.

    The true remainder is ``O((1-eps)^2 log(1/(1-eps)))`` because ``E`` has a
    logarithmic term at ``k = 1``.
    """
    eps = _check_range(eps, BOUNDARY_SERIES_MIN, 1.0, "eps")
    return _scalar_or_array(4.0 * (1.0 - eps) / np.pi)


def invert_g_star(value: float, tol: float = 1e-14) -> float:
    """Radius ``eps`` at which ``g_star(eps) == value``; g* is strictly decreasing."""
    if not 0.0 <= value <= 1.0:
        raise OutOfDomain("g* value must lie in [0, 1]")
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if g_star(mid) > value:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
