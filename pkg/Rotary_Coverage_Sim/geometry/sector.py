"""
Angular sectors anchored at a reference point.
"""
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .region import RegionBoundary, Point

TWO_PI = 2.0 * np.pi


def sector_angular_width(phase_start: float, phase_end: float) -> float:
    """Counter-clockwise angle from ``phase_start`` to ``phase_end`` in [0, 2*pi)."""
    width = float(np.mod(phase_end - phase_start, TWO_PI))
    # np.mod can round a tiny negative difference up to exactly 2*pi
    return 0.0 if width >= TWO_PI else width


@dataclass(frozen=True)
class Sector:
    """One agent's subregion: the part of the region swept counter-clockwise
    from ``phase_start`` to ``phase_end`` around ``reference``."""

    reference: Tuple[float, float]
    phase_start: float
    phase_end: float
    full_circle: bool = False

    def __post_init__(self):
        object.__setattr__(self, "reference", (float(self.reference[0]), float(self.reference[1])))
        object.__setattr__(self, "phase_start", float(self.phase_start))
        object.__setattr__(self, "phase_end", float(self.phase_end))

    @classmethod
    def full(cls, reference, phase_start: float = 0.0) -> "Sector":
        """The whole region seen from ``reference`` (width 2*pi)."""
        return cls(reference, phase_start, phase_start, full_circle=True)

    @property
    def width(self) -> float:
        if self.full_circle:
            return TWO_PI
        return sector_angular_width(self.phase_start, self.phase_end)

    @property
    def origin(self) -> np.ndarray:
        return np.array(self.reference)


def points_in_sector(sector: Sector, boundary: RegionBoundary, x, y) -> np.ndarray:
    """Vectorised membership test; the reference point itself belongs to the sector."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rx, ry = sector.reference
    dx, dy = x - rx, y - ry
    relative = np.mod(np.arctan2(dy, dx) - sector.phase_start, TWO_PI)
    relative = np.where(relative >= TWO_PI, 0.0, relative)
    relative = np.where((dx == 0.0) & (dy == 0.0), 0.0, relative)
    return (boundary.level(x, y) <= 0.0) & (relative <= sector.width)


def point_in_sector(sector: Sector, boundary: RegionBoundary, p: Point) -> bool:
    return bool(points_in_sector(sector, boundary, float(p[0]), float(p[1])))


def sector_polyline(sector: Sector, boundary: RegionBoundary, samples: int = 33) -> List[List[float]]:
    """Closed outline: reference, outer arc from start to end pointer, reference."""
    rx, ry = sector.reference
    angles = sector.phase_start + np.linspace(0.0, sector.width, max(samples, 2))
    kappa = boundary.ray_distances(sector.reference, angles)
    arc = np.column_stack([rx + kappa * np.cos(angles), ry + kappa * np.sin(angles)])
    return [[rx, ry]] + arc.tolist() + [[rx, ry]]
