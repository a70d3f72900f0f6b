"""
Density integrals over sectors.

All sector integrals use the polar parameterisation about the sector's
reference point r:

    q(theta, kappa) = r + kappa * (cos theta, sin theta),   dq = kappa dkappa dtheta

with theta over the sector and kappa from 0 to the ray's boundary distance.
"""
from dataclasses import dataclass
from typing import Optional, Tuple
import logging

import numpy as np

from Rotary_Coverage_Sim.geometry.region import RegionBoundary
from Rotary_Coverage_Sim.geometry.sector import Sector, points_in_sector
from Rotary_Coverage_Sim.utils.errors import EmptySector
from .density import DensityField
from .quadrature import QuadratureConfig, graded_rule, unit_rule

logger = logging.getLogger(__name__)

DEFAULT_QUADRATURE = QuadratureConfig()
MAX_PANEL_WIDTH = np.pi / 4


@dataclass(frozen=True)
class PartitionGradients:
    """Sensitivities of a sector's mass to its pointers and reference point."""

    dm_dphi_start: float
    dm_dphi_end: float
    dm_dref: np.ndarray


@dataclass(frozen=True)
class SectorIntegrals:
    """Mass, first and second moments of one sector, plus its mass gradients."""

    sector: Sector
    mass: float
    moment: np.ndarray
    second_moment: float
    gradients: Optional[PartitionGradients] = None

    @property
    def centroid(self) -> np.ndarray:
        if self.sector.width == 0.0 or self.mass <= 0.0:
            raise EmptySector(f"sector at {self.sector.reference} has zero width")
        return self.moment / self.mass


@dataclass(frozen=True)
class SectorSamples:
    """Quadrature points of one sector with their weights (Jacobian included)."""

    x: np.ndarray
    y: np.ndarray
    weights: np.ndarray
    rho: np.ndarray

    @property
    def points(self) -> np.ndarray:
        return np.column_stack([self.x, self.y])


def _singular_offset(density: DensityField, sector: Sector) -> Tuple[Optional[np.ndarray], Optional[float]]:
    """Offset of the density's singular point from the reference, and its angle past phase_start.

    The angle is None unless the point's direction lies strictly inside the sector.
    """
    if density.singular_point is None:
        return None, None
    rel = np.asarray(density.singular_point, dtype=float) - np.asarray(sector.reference, dtype=float)
    if np.hypot(rel[0], rel[1]) == 0.0:
        return None, None
    offset = float(np.mod(np.arctan2(rel[1], rel[0]) - sector.phase_start, 2.0 * np.pi))
    if 0.0 < offset < sector.width:
        return rel, offset
    return rel, None


def _angular_rule(width: float, cut: Optional[float], quad: QuadratureConfig) -> Tuple[np.ndarray, np.ndarray]:
    """Composite rule on [0, width]; panels touching ``cut`` use the graded rule."""
    segments = [(0.0, width, None)] if cut is None else [(0.0, cut, "end"), (cut, width, "start")]
    nodes, weights = [], []
    for lo, hi, graded_side in segments:
        count = max(1, int(np.ceil((hi - lo) / MAX_PANEL_WIDTH - 1e-9)))
        h = (hi - lo) / count
        for k in range(count):
            graded = (graded_side == "end" and k == count - 1) or (graded_side == "start" and k == 0)
            t, w = (graded_rule if graded else unit_rule)(quad.angular_nodes, quad.scheme)
            nodes.append(lo + k * h + h * t)
            weights.append(h * w)
    return np.concatenate(nodes), np.concatenate(weights)


def _radial_rule(kmax: np.ndarray, cut: Optional[np.ndarray],
                 quad: QuadratureConfig) -> Tuple[np.ndarray, np.ndarray]:
    """Per-ray nodes and weights in kappa, shape (rays, nodes).

    With ``cut`` each ray is split there into two graded segments.
    """
    if cut is None:
        t, w = unit_rule(quad.radial_nodes, quad.scheme)
        return kmax[:, None] * t[None, :], kmax[:, None] * w[None, :]
    t, w = graded_rule(quad.radial_nodes, quad.scheme)
    rest = kmax - cut
    kappa = np.hstack([cut[:, None] * t[None, :], cut[:, None] + rest[:, None] * t[None, :]])
    weights = np.hstack([cut[:, None] * w[None, :], rest[:, None] * w[None, :]])
    return kappa, weights


def _closest_approach(rel: Optional[np.ndarray], theta: np.ndarray, kmax: np.ndarray) -> Optional[np.ndarray]:
    if rel is None:
        return None
    return np.clip(rel[0] * np.cos(theta) + rel[1] * np.sin(theta), 0.0, kmax)


def sector_samples(boundary: RegionBoundary, density: DensityField, sector: Sector,
                   quad: QuadratureConfig = DEFAULT_QUADRATURE) -> SectorSamples:
    """Composite polar quadrature over one sector.

    The angular range is split into panels no wider than MAX_PANEL_WIDTH. When
    the density has a singular point, the angular range is also cut at the
    point's direction and every ray at its closest approach to the point.
    """
    width = sector.width
    if width == 0.0:
        empty = np.zeros(0)
        return SectorSamples(empty, empty, empty, empty)
    rel, cut = _singular_offset(density, sector)
    t_a, w_a = _angular_rule(width, cut, quad)

    theta = sector.phase_start + t_a
    kmax = np.asarray(boundary.ray_distances(sector.reference, theta), dtype=float)
    kappa, w_k = _radial_rule(kmax, _closest_approach(rel, theta, kmax), quad)
    weights = w_a[:, None] * w_k * kappa

    rx, ry = sector.reference
    x = rx + kappa * np.cos(theta)[:, None]
    y = ry + kappa * np.sin(theta)[:, None]
    rho = np.asarray(density(x, y), dtype=float)
    density.check(rho)
    return SectorSamples(x.ravel(), y.ravel(), weights.ravel(), rho.ravel())


def _pointer_integrals(boundary: RegionBoundary, density: DensityField, origin, angle: float,
                       quad: QuadratureConfig) -> Tuple[float, float]:
    """Along one pointer: (integral of rho * kappa, integral of rho) in kappa."""
    theta = np.array([angle])
    kmax = np.asarray(boundary.ray_distances(origin, theta), dtype=float).ravel()
    rel = None
    if density.singular_point is not None:
        rel = np.asarray(density.singular_point, dtype=float) - np.asarray(origin, dtype=float)
        if np.hypot(rel[0], rel[1]) == 0.0:
            rel = None
    kappa, w_k = _radial_rule(kmax, _closest_approach(rel, theta, kmax), quad)
    kappa, w_k = kappa[0], w_k[0]
    x = origin[0] + kappa * np.cos(angle)
    y = origin[1] + kappa * np.sin(angle)
    rho = np.asarray(density(x, y), dtype=float)
    density.check(rho)
    weighted = w_k * rho
    return float(np.sum(weighted * kappa)), float(np.sum(weighted))


def partition_gradients(boundary: RegionBoundary, density: DensityField, sector: Sector,
                        quad: QuadratureConfig = DEFAULT_QUADRATURE) -> PartitionGradients:
    """d(mass)/d(phase_start), d(mass)/d(phase_end) and d(mass)/d(reference).

    The phase derivatives carry the polar Jacobian kappa. The reference
    derivative is a line integral in arc length over the two pointers only,
    since the outer boundary does not move with the reference point.
    """
    phi_s, phi_e = sector.phase_start, sector.phase_end
    radial_s, line_s = _pointer_integrals(boundary, density, sector.reference, phi_s, quad)
    radial_e, line_e = _pointer_integrals(boundary, density, sector.reference, phi_e, quad)
    normal_s = np.array([np.sin(phi_s), -np.cos(phi_s)])
    normal_e = np.array([-np.sin(phi_e), np.cos(phi_e)])
    return PartitionGradients(
        dm_dphi_start=-radial_s,
        dm_dphi_end=radial_e,
        dm_dref=line_s * normal_s + line_e * normal_e,
    )


def sector_integrals(boundary: RegionBoundary, density: DensityField, sector: Sector,
                     quad: QuadratureConfig = DEFAULT_QUADRATURE,
                     with_gradients: bool = True) -> SectorIntegrals:
    """Mass, moments and (optionally) mass gradients from one set of samples."""
    samples = sector_samples(boundary, density, sector, quad)
    wr = samples.weights * samples.rho
    mass = float(np.sum(wr))
    moment = np.array([np.sum(wr * samples.x), np.sum(wr * samples.y)])
    second = float(np.sum(wr * (samples.x ** 2 + samples.y ** 2)))
    gradients = partition_gradients(boundary, density, sector, quad) if with_gradients else None
    return SectorIntegrals(sector, mass, moment, second, gradients)


def sector_mass(boundary, density, sector, quad=DEFAULT_QUADRATURE) -> float:
    return sector_integrals(boundary, density, sector, quad, with_gradients=False).mass


def sector_moment(boundary, density, sector, quad=DEFAULT_QUADRATURE) -> np.ndarray:
    return sector_integrals(boundary, density, sector, quad, with_gradients=False).moment


def sector_second_moment(boundary, density, sector, quad=DEFAULT_QUADRATURE) -> float:
    return sector_integrals(boundary, density, sector, quad, with_gradients=False).second_moment


def sector_centroid(boundary, density, sector, quad=DEFAULT_QUADRATURE) -> np.ndarray:
    if sector.width == 0.0:
        raise EmptySector(f"sector at {sector.reference} has zero width")
    return sector_integrals(boundary, density, sector, quad, with_gradients=False).centroid


def mass_phase_gradients(boundary, density, sector, quad=DEFAULT_QUADRATURE) -> Tuple[float, float]:
    g = partition_gradients(boundary, density, sector, quad)
    return g.dm_dphi_start, g.dm_dphi_end


def mass_reference_gradient(boundary, density, sector, quad=DEFAULT_QUADRATURE) -> np.ndarray:
    return partition_gradients(boundary, density, sector, quad).dm_dref


def grid_integrals_oracle(boundary: RegionBoundary, density: DensityField, sector: Sector,
                          resolution: int) -> Tuple[float, np.ndarray]:
    """Riemann sums of rho and q*rho over cell centres lying in the sector."""
    if resolution < 64:
        raise ValueError(f"resolution must be >= 64, got {resolution}")
    if sector.width == 0.0:
        return 0.0, np.zeros(2)
    x0, x1, y0, y1 = boundary.bounding_box()
    hx, hy = (x1 - x0) / resolution, (y1 - y0) / resolution
    xs = x0 + hx * (np.arange(resolution) + 0.5)
    ys = y0 + hy * (np.arange(resolution) + 0.5)

    mass, mx, my = 0.0, 0.0, 0.0
    rows = max(1, (1 << 20) // resolution)
    for start in range(0, resolution, rows):
        gx, gy = np.meshgrid(xs, ys[start:start + rows])
        mask = points_in_sector(sector, boundary, gx, gy)
        if not mask.any():
            continue
        px, py = gx[mask], gy[mask]
        rho = np.asarray(density(px, py), dtype=float)
        mass += float(np.sum(rho))
        mx += float(np.sum(rho * px))
        my += float(np.sum(rho * py))
    cell = hx * hy
    return mass * cell, np.array([mx, my]) * cell


def grid_mass_oracle(boundary: RegionBoundary, density: DensityField, sector: Sector,
                     resolution: int) -> float:
    return grid_integrals_oracle(boundary, density, sector, resolution)[0]
