"""Bounded planar domains: area, containment, uniform sampling and ray casting.

Every domain knows the distance from an interior point to its boundary along
a direction ``theta``.  For convex domains that single function is all the
continuum betweenness integral needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidDomain, NonConvexDomain, OriginOutside

TWO_PI = 2.0 * math.pi
# relative slack for closed-boundary containment tests
_CONTAIN_TOL = 1e-12


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidDomain(f"non-finite point ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)


def _as_point(p) -> Point:
    return p if isinstance(p, Point) else Point(float(p[0]), float(p[1]))


def _directions(theta) -> np.ndarray:
    theta = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


class Domain:
    """Common interface.  Subclasses are immutable dataclasses."""

    convex = True

    @property
    def area(self) -> float:
        raise NotImplementedError

    @property
    def anchor(self) -> Point:
        """Reference centre from which radial displacement is measured."""
        raise NotImplementedError

    @property
    def bbox(self) -> tuple[tuple[float, float], tuple[float, float]]:
        raise NotImplementedError

    def contains_many(self, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def contains(self, p) -> bool:
        return bool(self.contains_many(np.atleast_2d(_as_point(p).as_array()))[0])

    def interior_margin(self, pts: np.ndarray) -> np.ndarray:
        """Signed distance-like slack; positive strictly inside."""
        raise NotImplementedError

    def _ray_distances(self, origin: np.ndarray, u: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def ray_distances(self, origin, theta) -> np.ndarray:
        """Distance from ``origin`` to the boundary along each angle in ``theta``."""
        if not self.convex:
            raise NonConvexDomain("ray distance is only defined for convex domains")
        o = _as_point(origin).as_array()
        if not self.interior_margin(o[None, :])[0] > 0.0:
            raise OriginOutside(f"origin {tuple(o)} is not strictly inside the domain")
        return self._ray_distances(o, _directions(theta))

    @property
    def diameter(self) -> float:
        (x0, y0), (x1, y1) = self.bbox
        return math.hypot(x1 - x0, y1 - y0)


@dataclass(frozen=True)
class Disk(Domain):
    radius: float
    center: Point = Point(0.0, 0.0)

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise InvalidDomain(f"disk radius must be positive, got {self.radius}")
        object.__setattr__(self, "center", _as_point(self.center))

    @property
    def area(self) -> float:
        return math.pi * self.radius**2

    @property
    def anchor(self) -> Point:
        return self.center

    @property
    def bbox(self):
        cx, cy = self.center
        r = self.radius
        return (cx - r, cy - r), (cx + r, cy + r)

    def contains_many(self, pts):
        d2 = np.sum((np.asarray(pts, dtype=float) - self.center.as_array()) ** 2, axis=-1)
        return d2 <= self.radius**2 * (1.0 + _CONTAIN_TOL)

    def interior_margin(self, pts):
        d = np.hypot(*(np.asarray(pts, dtype=float) - self.center.as_array()).T)
        return self.radius - d

    def _ray_distances(self, origin, u):
        w = origin - self.center.as_array()
        b = u @ w
        q = self.radius**2 - w @ w
        root = np.sqrt(b * b + q)
        # two algebraically equal forms; pick the one free of cancellation
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(b > 0, q / (b + root), root - b)


@dataclass(frozen=True)
class ConvexPolygon(Domain):
    """Strictly convex polygon with counter-clockwise vertices."""

    vertices: tuple
    _normals: np.ndarray = field(init=False, repr=False, compare=False)
    _offsets: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        verts = tuple(_as_point(v) for v in self.vertices)
        if len(verts) < 3:
            raise InvalidDomain("a polygon needs at least 3 vertices")
        if len(set(verts)) != len(verts):
            raise InvalidDomain("repeated polygon vertex")
        v = np.array([p.as_array() for p in verts])
        e = np.roll(v, -1, axis=0) - v
        cross = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
        if not np.all(cross > 0):
            raise InvalidDomain("vertices must be strictly convex and counter-clockwise")
        # a star polygon passes the turn test but winds more than once
        turning = np.sum(np.arctan2(cross, np.sum(e * np.roll(e, -1, axis=0), axis=1)))
        if abs(turning - TWO_PI) > 1e-9:
            raise InvalidDomain("polygon boundary is self-intersecting")
        lengths = np.hypot(e[:, 0], e[:, 1])
        normals = np.stack([e[:, 1], -e[:, 0]], axis=1) / lengths[:, None]
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "_normals", normals)
        object.__setattr__(self, "_offsets", np.sum(normals * v, axis=1))

    @property
    def vertex_array(self) -> np.ndarray:
        return np.array([p.as_array() for p in self.vertices])

    @property
    def area(self) -> float:
        x, y = self.vertex_array.T
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    @property
    def anchor(self) -> Point:
        # area centroid
        x, y = self.vertex_array.T
        xn, yn = np.roll(x, -1), np.roll(y, -1)
        c = x * yn - xn * y
        a6 = 6.0 * self.area
        return Point(float(np.sum((x + xn) * c) / a6), float(np.sum((y + yn) * c) / a6))

    @property
    def bbox(self):
        v = self.vertex_array
        lo, hi = v.min(axis=0), v.max(axis=0)
        return (float(lo[0]), float(lo[1])), (float(hi[0]), float(hi[1]))

    def interior_margin(self, pts):
        pts = np.asarray(pts, dtype=float)
        return np.min(self._offsets - pts @ self._normals.T, axis=-1)

    def contains_many(self, pts):
        scale = max(1.0, self.diameter)
        return self.interior_margin(pts) >= -_CONTAIN_TOL * scale

    def _ray_distances(self, origin, u):
        slack = self._offsets - self._normals @ origin
        c = u @ self._normals.T
        with np.errstate(divide="ignore"):
            t = np.where(c > 0, slack / np.where(c > 0, c, 1.0), np.inf)
        return t.min(axis=-1)


@dataclass(frozen=True)
class Rectangle(ConvexPolygon):
    """Axis-aligned rectangle; by default spans ``[0, width] x [0, height]``."""

    vertices: tuple = field(init=False, repr=False)
    width: float = 1.0
    height: float = 1.0
    center: Point | None = None

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise InvalidDomain("rectangle sides must be positive")
        c = Point(self.width / 2, self.height / 2) if self.center is None else _as_point(self.center)
        object.__setattr__(self, "center", c)
        hw, hh = self.width / 2, self.height / 2
        object.__setattr__(
            self,
            "vertices",
            ((c.x - hw, c.y - hh), (c.x + hw, c.y - hh), (c.x + hw, c.y + hh), (c.x - hw, c.y + hh)),
        )
        super().__post_init__()

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def anchor(self) -> Point:
        return self.center


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _as_point(self.center))
        if not self.radius > 0:
            raise InvalidDomain("hole radius must be positive")


@dataclass(frozen=True)
class Holed(Domain):
    """Convex base with open circular holes removed.  Not convex."""

    base: Domain
    holes: tuple

    convex = False

    def __post_init__(self):
        if isinstance(self.base, Holed) or not self.base.convex:
            raise InvalidDomain("holed domain needs a convex base")
        holes = tuple(h if isinstance(h, Circle) else Circle(h[0], h[1]) for h in self.holes)
        for h in holes:
            if not self.base.interior_margin(h.center.as_array()[None, :])[0] > h.radius:
                raise InvalidDomain(f"hole {h} is not strictly inside the base")
        for i, a in enumerate(holes):
            for b in holes[i + 1 :]:
                if math.dist(tuple(a.center), tuple(b.center)) <= a.radius + b.radius:
                    raise InvalidDomain("holes overlap")
        object.__setattr__(self, "holes", holes)

    @property
    def area(self) -> float:
        return self.base.area - sum(math.pi * h.radius**2 for h in self.holes)

    @property
    def anchor(self) -> Point:
        return self.base.anchor

    @property
    def bbox(self):
        return self.base.bbox

    def _in_hole(self, pts):
        pts = np.asarray(pts, dtype=float)
        out = np.zeros(pts.shape[:-1], dtype=bool)
        for h in self.holes:
            out |= np.sum((pts - h.center.as_array()) ** 2, axis=-1) < h.radius**2
        return out

    def contains_many(self, pts):
        return self.base.contains_many(pts) & ~self._in_hole(pts)

    def interior_margin(self, pts):
        m = self.base.interior_margin(pts)
        for h in self.holes:
            m = np.minimum(m, np.hypot(*(np.asarray(pts, dtype=float) - h.center.as_array()).T) - h.radius)
        return m


def triangle(leg: float = 1.0) -> ConvexPolygon:
    """Right triangle with both legs of length ``leg`` and the right angle at the origin."""
    return ConvexPolygon(((0.0, 0.0), (leg, 0.0), (0.0, leg)))


DEFAULT_HOLES = ((0.3, 0.5, 0.15), (0.7, 0.5, 0.15))


def build_domain(kind: str, radius: float = 1.0, side: float = 1.0,
                 holes: Sequence[tuple[float, float, float]] | None = None) -> Domain:
    """Domain factory keyed by the names used in run-config files."""
    if kind == "disk":
        return Disk(radius)
    if kind == "square":
        return Rectangle(width=side, height=side)
    if kind == "triangle":
        return triangle(side)
    if kind == "holed-square":
        if holes is None:
            holes = [(cx * side, cy * side, r * side) for cx, cy, r in DEFAULT_HOLES]
        return Holed(Rectangle(width=side, height=side), tuple(Circle(Point(cx, cy), r) for cx, cy, r in holes))
    raise InvalidDomain(f"unknown domain kind {kind!r}")


def area(d: Domain) -> float:
    return d.area


def contains(d: Domain, p) -> bool:
    return d.contains(p)


def ray_distance(d: Domain, origin, theta: float) -> float:
    return float(d.ray_distances(origin, np.array([theta]))[0])


def sample_uniform(d: Domain, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` i.i.d. uniform points in ``d`` as an ``(count, 2)`` array.

    Rejection from the bounding box, drawn in batches; the result depends only
    on ``count`` and the generator state.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    if count == 0:
        return np.empty((0, 2))
    (x0, y0), (x1, y1) = d.bbox
    accept = d.area / ((x1 - x0) * (y1 - y0))
    chunks, have = [], 0
    while have < count:
        batch = int((count - have) / accept * 1.1) + 16
        pts = rng.uniform((x0, y0), (x1, y1), size=(batch, 2))
        pts = pts[d.contains_many(pts)]
        chunks.append(pts)
        have += len(pts)
    return np.concatenate(chunks)[:count]
