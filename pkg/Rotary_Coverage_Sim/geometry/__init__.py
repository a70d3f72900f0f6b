"""
Coverage region and sector geometry.
"""
from .region import (
    RegionBoundary, Ellipse, ImplicitRegion, polynomial_field, polynomial_region,
    contains, ray_boundary_distance,
)
from .sector import Sector, sector_angular_width, point_in_sector, points_in_sector, sector_polyline

__all__ = [
    'RegionBoundary', 'Ellipse', 'ImplicitRegion', 'polynomial_field', 'polynomial_region',
    'contains', 'ray_boundary_distance',
    'Sector', 'sector_angular_width', 'point_in_sector', 'points_in_sector', 'sector_polyline',
]
