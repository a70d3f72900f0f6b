"""
Tensor-product quadrature rules used for polar sector integrals.
"""
from dataclasses import dataclass, asdict
from functools import lru_cache
from typing import Tuple

import numpy as np

GAUSS_LEGENDRE = "gauss-legendre"
SIMPSON = "composite-simpson"
SCHEMES = (GAUSS_LEGENDRE, SIMPSON)


@dataclass(frozen=True)
class QuadratureConfig:
    """Node counts per ray (radial) and per sector (angular)."""

    radial_nodes: int = 32
    angular_nodes: int = 32
    scheme: str = GAUSS_LEGENDRE

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown quadrature scheme '{self.scheme}', expected one of {SCHEMES}")
        for name in ("radial_nodes", "angular_nodes"):
            count = getattr(self, name)
            if int(count) != count or count < 4:
                raise ValueError(f"{name} must be an integer >= 4, got {count}")
            # Simpson needs an even number of panels, i.e. an odd node count
            if self.scheme == SIMPSON and count % 2 == 0:
                raise ValueError(f"{name} must be odd for {SIMPSON}, got {count}")

    def doubled(self) -> "QuadratureConfig":
        extra = 1 if self.scheme == SIMPSON else 0
        return QuadratureConfig(2 * self.radial_nodes - extra, 2 * self.angular_nodes - extra, self.scheme)

    def to_dict(self) -> dict:
        return asdict(self)


@lru_cache(maxsize=64)
def unit_rule(nodes: int, scheme: str = GAUSS_LEGENDRE) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, 1]; the weights sum to one."""
    if scheme == GAUSS_LEGENDRE:
        x, w = np.polynomial.legendre.leggauss(nodes)
        t, weights = 0.5 * (x + 1.0), 0.5 * w
    elif scheme == SIMPSON:
        panels = nodes - 1
        t = np.linspace(0.0, 1.0, nodes)
        weights = np.ones(nodes)
        weights[1:-1:2] = 4.0
        weights[2:-1:2] = 2.0
        weights *= 1.0 / (3.0 * panels)
    else:
        raise ValueError(f"unknown quadrature scheme '{scheme}'")
    t.setflags(write=False)
    weights.setflags(write=False)
    return t, weights


@lru_cache(maxsize=64)
def graded_rule(nodes: int, scheme: str = GAUSS_LEGENDRE) -> Tuple[np.ndarray, np.ndarray]:
    """unit_rule mapped through t = u - sin(2 pi u) / (2 pi).

    The map clusters nodes cubically at both ends of [0, 1], which keeps the
    rule accurate when the integrand is singular at an endpoint.
    """
    u, w = unit_rule(nodes, scheme)
    t = u - np.sin(2.0 * np.pi * u) / (2.0 * np.pi)
    weights = w * (1.0 - np.cos(2.0 * np.pi * u))
    t.setflags(write=False)
    weights.setflags(write=False)
    return t, weights
