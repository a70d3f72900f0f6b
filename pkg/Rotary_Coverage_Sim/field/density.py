"""
Event densities over the coverage region.
"""
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple
import logging

import numpy as np

from Rotary_Coverage_Sim.geometry.region import RegionBoundary, polynomial_field
from Rotary_Coverage_Sim.utils.errors import DensityOutOfBounds

logger = logging.getLogger(__name__)

BENCHMARK_SCALE = 1e-4

# densities that already reported a sample outside their declared bounds
_warned = set()


@dataclass(frozen=True)
class DensityField:
    """A strictly positive, bounded density ``eval(x, y)``.

    ``singular_point``, when set, is a point where the density has no
    continuous extension; sector quadrature puts panel edges through it.
    """

    eval: Callable[[np.ndarray, np.ndarray], np.ndarray]
    lower_bound: float
    upper_bound: float
    name: str = "custom"
    description: dict = field(default_factory=dict, compare=False)
    singular_point: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if not 0.0 < self.lower_bound <= self.upper_bound:
            raise ValueError(
                f"density '{self.name}' needs 0 < lower_bound <= upper_bound, "
                f"got [{self.lower_bound}, {self.upper_bound}]")

    def __call__(self, x, y) -> np.ndarray:
        return self.eval(x, y)

    def check(self, values: np.ndarray) -> None:
        """Raise on non-positive samples; warn once on samples outside the bounds."""
        if values.size == 0:
            return
        low, high = float(np.min(values)), float(np.max(values))
        if not low > 0.0:
            raise DensityOutOfBounds(f"density '{self.name}' sampled {low:.6g} <= 0")
        tol = 1e-9 * self.upper_bound
        if (low < self.lower_bound - tol or high > self.upper_bound + tol) and self.name not in _warned:
            _warned.add(self.name)
            logger.warning(
                f"density '{self.name}' sampled outside [{self.lower_bound:.6g}, {self.upper_bound:.6g}]: "
                f"min {low:.6g}, max {high:.6g}")

    def scaled(self, factor: float) -> "DensityField":
        if factor == 1.0:
            return self
        if not factor > 0.0:
            raise ValueError(f"density scale must be positive, got {factor}")
        fn = self.eval
        description = dict(self.description, scale=factor)
        return DensityField(lambda x, y: factor * fn(x, y), factor * self.lower_bound,
                            factor * self.upper_bound, self.name, description, self.singular_point)

    def to_dict(self) -> dict:
        return dict(self.description) or {"name": self.name}


def uniform_density(value: float = 1.0) -> DensityField:
    value = float(value)

    def evaluate(x, y):
        return np.full(np.broadcast(np.asarray(x), np.asarray(y)).shape, value)

    return DensityField(evaluate, value, value, "uniform", {"name": "uniform", "value": value})


def benchmark_density(bounding_radius: float = 5.0) -> DensityField:
    """1e-4 * (exp(sin^2(theta) + cos(theta)) + |q|) with theta = atan2(y, x).

    At the origin theta is taken as 0. The angular factor lies in
    [e^-1, e^(5/4)], which with the bounding radius gives the bounds.
    """

    def evaluate(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        theta = np.arctan2(y, x)
        return BENCHMARK_SCALE * (np.exp(np.sin(theta) ** 2 + np.cos(theta)) + np.hypot(x, y))

    lower = BENCHMARK_SCALE * np.exp(-1.0)
    upper = BENCHMARK_SCALE * (np.exp(1.25) + bounding_radius)
    return DensityField(evaluate, lower, upper, "paper-s4", {"name": "paper-s4"}, singular_point=(0.0, 0.0))


def scan_bounds(fn: Callable, boundary: RegionBoundary, resolution: int = 256):
    """Min and max of ``fn`` over a grid covering the region."""
    x0, x1, y0, y1 = boundary.bounding_box()
    xs = np.linspace(x0, x1, resolution)
    ys = np.linspace(y0, y1, resolution)
    gx, gy = np.meshgrid(xs, ys)
    inside = boundary.level(gx, gy) <= 0.0
    values = np.asarray(fn(gx[inside], gy[inside]), dtype=float)
    return float(values.min()), float(values.max())


def polynomial_density(coefficients: Sequence[Sequence[float]], boundary: RegionBoundary,
                       resolution: int = 256) -> DensityField:
    """rho(x, y) = sum(c * x**i * y**j); bounds found by grid scan over the region."""
    fn = polynomial_field(coefficients)
    lower, upper = scan_bounds(fn, boundary, resolution)
    logger.info(f"polynomial density bounds by grid scan: [{lower:.6g}, {upper:.6g}]")
    if not lower > 0.0:
        raise DensityOutOfBounds(f"polynomial density reaches {lower:.6g} <= 0 inside the region")
    return DensityField(fn, lower, upper, "polynomial",
                        {"coefficients": [list(t) for t in coefficients]})


def density_by_name(name: str, boundary: Optional[RegionBoundary] = None, value: float = 1.0) -> DensityField:
    if name == "uniform":
        return uniform_density(value)
    if name == "paper-s4":
        radius = boundary.bounding_radius if boundary is not None else 5.0
        return benchmark_density(radius)
    raise ValueError(f"unknown density '{name}'")
