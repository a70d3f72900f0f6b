"""
Coverage region: containment and ray-to-boundary queries.

The region is the sublevel set {(x, y) | L(x, y) <= 0} of a scalar field L.
Ellipses are intersected in closed form; any other implicit boundary is
handled by a sign scan along the ray followed by bisection.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union
import logging

import numpy as np

from Rotary_Coverage_Sim.utils.errors import OriginOutsideRegion, NonStarShaped

logger = logging.getLogger(__name__)

Point = Union[Sequence[float], np.ndarray]

BISECTION_TOL = 1e-12
SCAN_SAMPLES = 256


class RegionBoundary(ABC):
    """A bounded planar region described by an implicit function."""

    bounding_radius: float

    @abstractmethod
    def level(self, x, y) -> np.ndarray:
        """Evaluate L(x, y); accepts scalars or arrays."""

    @abstractmethod
    def ray_distances(self, origin: Point, angles) -> np.ndarray:
        """Distance from ``origin`` to the boundary along each angle."""

    def bounding_box(self):
        """(xmin, xmax, ymin, ymax) enclosing the region."""
        r = self.bounding_radius
        return -r, r, -r, r

    def contains(self, p: Point) -> bool:
        return bool(self.level(float(p[0]), float(p[1])) <= 0.0)

    def contains_strictly(self, p: Point) -> bool:
        return bool(self.level(float(p[0]), float(p[1])) < 0.0)

    def _check_origin(self, origin: Point) -> np.ndarray:
        o = np.asarray(origin, dtype=float)
        value = float(self.level(o[0], o[1]))
        if not value < 0.0:
            raise OriginOutsideRegion(f"origin ({o[0]:.6g}, {o[1]:.6g}) has L = {value:.3g} >= 0")
        return o

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Ellipse(RegionBoundary):
    """Axis-aligned ellipse centred at the origin."""

    semi_axis_a: float
    semi_axis_b: float

    def __post_init__(self):
        if not (self.semi_axis_a > 0 and self.semi_axis_b > 0):
            raise ValueError(f"semi-axes must be positive, got {self.semi_axis_a}, {self.semi_axis_b}")

    @property
    def bounding_radius(self) -> float:
        return max(self.semi_axis_a, self.semi_axis_b)

    def bounding_box(self):
        return -self.semi_axis_a, self.semi_axis_a, -self.semi_axis_b, self.semi_axis_b

    def level(self, x, y):
        return (np.square(x) / self.semi_axis_a ** 2
                + np.square(y) / self.semi_axis_b ** 2 - 1.0)

    def ray_distances(self, origin: Point, angles) -> np.ndarray:
        o = self._check_origin(origin)
        angles = np.asarray(angles, dtype=float)
        dx, dy = np.cos(angles), np.sin(angles)
        inv_a2 = 1.0 / self.semi_axis_a ** 2
        inv_b2 = 1.0 / self.semi_axis_b ** 2
        qa = dx * dx * inv_a2 + dy * dy * inv_b2
        qb = 2.0 * (o[0] * dx * inv_a2 + o[1] * dy * inv_b2)
        qc = o[0] ** 2 * inv_a2 + o[1] ** 2 * inv_b2 - 1.0
        root = np.sqrt(qb * qb - 4.0 * qa * qc)
        # qc < 0, so exactly one root is positive; pick it without cancellation
        q = -0.5 * (qb + np.where(qb >= 0.0, root, -root))
        return np.where(qb >= 0.0, qc / q, q / qa)

    def to_dict(self) -> dict:
        return {"type": "ellipse", "a": self.semi_axis_a, "b": self.semi_axis_b}


@dataclass(frozen=True)
class ImplicitRegion(RegionBoundary):
    """Region given by an arbitrary vectorised L(x, y) and a bounding radius.

    Must be star-shaped with respect to every ray origin it is queried from;
    a ray that leaves and re-enters the region raises NonStarShaped.
    """

    fn: Callable[[np.ndarray, np.ndarray], np.ndarray]
    bounding_radius: float
    description: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.bounding_radius > 0:
            raise ValueError(f"bounding_radius must be positive, got {self.bounding_radius}")

    def level(self, x, y):
        return self.fn(x, y)

    def ray_distances(self, origin: Point, angles) -> np.ndarray:
        o = self._check_origin(origin)
        scalar = np.ndim(angles) == 0
        angles = np.atleast_1d(np.asarray(angles, dtype=float))
        dx, dy = np.cos(angles)[:, None], np.sin(angles)[:, None]

        upper = 2.0 * self.bounding_radius
        kappa = np.linspace(0.0, upper, SCAN_SAMPLES + 1)[None, :]
        outside = self.level(o[0] + kappa * dx, o[1] + kappa * dy) >= 0.0

        exits = outside.any(axis=1)
        if not exits.all():
            raise NonStarShaped(f"ray does not leave the region within {upper:.6g}")
        first = outside.argmax(axis=1)
        # once outside, every later sample must stay outside
        after = np.arange(kappa.shape[1])[None, :] >= first[:, None]
        if np.any(after & ~outside):
            bad = angles[np.any(after & ~outside, axis=1)]
            raise NonStarShaped(f"ray re-enters the region at angle {bad[0]:.6g}")

        step = upper / SCAN_SAMPLES
        lo = (first - 1) * step
        hi = first * step
        dx, dy = dx[:, 0], dy[:, 0]
        iterations = int(np.ceil(np.log2(step / BISECTION_TOL))) + 1
        for _ in range(iterations):
            mid = 0.5 * (lo + hi)
            out = self.level(o[0] + mid * dx, o[1] + mid * dy) >= 0.0
            hi = np.where(out, mid, hi)
            lo = np.where(out, lo, mid)
        result = 0.5 * (lo + hi)
        return result[0] if scalar else result

    def to_dict(self) -> dict:
        return dict(self.description) or {"type": "implicit", "bounding_radius": self.bounding_radius}


def polynomial_field(coefficients: Sequence[Sequence[float]]) -> Callable:
    """Build f(x, y) = sum(c * x**i * y**j) from ``[i, j, c]`` triples."""
    terms = [(int(i), int(j), float(c)) for i, j, c in coefficients]

    def evaluate(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        total = np.zeros(np.broadcast(x, y).shape)
        for i, j, c in terms:
            total = total + c * x ** i * y ** j
        return total

    return evaluate


def polynomial_region(coefficients: Sequence[Sequence[float]], bounding_radius: float) -> ImplicitRegion:
    return ImplicitRegion(
        fn=polynomial_field(coefficients),
        bounding_radius=float(bounding_radius),
        description={"type": "implicit", "coefficients": [list(t) for t in coefficients],
                     "bounding_radius": float(bounding_radius)},
    )


def contains(boundary: RegionBoundary, p: Point) -> bool:
    """True iff L(p) <= 0."""
    return boundary.contains(p)


def ray_boundary_distance(boundary: RegionBoundary, origin: Point, angle: float) -> float:
    """Distance from an interior ``origin`` to the boundary along ``angle``."""
    return float(np.asarray(boundary.ray_distances(origin, np.array([angle]))).ravel()[0])
