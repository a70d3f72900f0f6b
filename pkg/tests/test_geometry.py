import numpy as np
import pytest

from Rotary_Coverage_Sim.geometry import (
    Ellipse, ImplicitRegion, Sector, contains, point_in_sector, points_in_sector,
    polynomial_region, ray_boundary_distance, sector_angular_width, sector_polyline,
)
from Rotary_Coverage_Sim.utils.errors import NonStarShaped, OriginOutsideRegion


@pytest.mark.parametrize(
    "point, inside",
    [((0.0, 0.0), True), ((5.0, 0.0), True), ((5.0001, 0.0), False), ((0.0, 3.0), True), ((4.0, 2.0), False)],
)
def test_contains_ellipse(ellipse, point, inside):
    assert contains(ellipse, point) is inside


@pytest.mark.parametrize(
    "origin, angle, expected",
    [
        ((0.0, 0.0), 0.0, 5.0),
        ((0.0, 0.0), np.pi / 2, 3.0),
        ((0.0, 0.0), np.pi, 5.0),
        ((4.0, 0.0), 0.0, 1.0),
        ((4.0, 0.0), np.pi, 9.0),
        ((0.0, -2.0), np.pi / 2, 5.0),
    ],
)
def test_ray_distance_ellipse(ellipse, origin, angle, expected):
    assert ray_boundary_distance(ellipse, origin, angle) == pytest.approx(expected, rel=1e-12)


def test_ray_distance_lands_on_boundary(ellipse, rng):
    for _ in range(20):
        origin = rng.uniform([-3.0, -1.5], [3.0, 1.5])
        angles = rng.uniform(0.0, 2 * np.pi, size=50)
        kappa = ellipse.ray_distances(origin, angles)
        x = origin[0] + kappa * np.cos(angles)
        y = origin[1] + kappa * np.sin(angles)
        assert np.all(kappa > 0.0)
        assert np.allclose(ellipse.level(x, y), 0.0, atol=1e-12)


def test_origin_outside_region(ellipse):
    with pytest.raises(OriginOutsideRegion):
        ray_boundary_distance(ellipse, (6.0, 0.0), 0.0)
    with pytest.raises(OriginOutsideRegion):
        ray_boundary_distance(ellipse, (5.0, 0.0), np.pi)


def test_implicit_circle_matches_closed_form(unit_disk, rng):
    circle = polynomial_region([[2, 0, 1.0], [0, 2, 1.0], [0, 0, -1.0]], 1.5)
    for _ in range(10):
        origin = rng.uniform(-0.5, 0.5, size=2)
        angles = rng.uniform(0.0, 2 * np.pi, size=16)
        assert np.allclose(circle.ray_distances(origin, angles),
                           unit_disk.ray_distances(origin, angles), atol=1e-10)
    assert ray_boundary_distance(circle, (0.0, 0.0), 1.0) == pytest.approx(1.0, abs=1e-10)


def test_implicit_scalar_angle_returns_scalar():
    circle = polynomial_region([[2, 0, 1.0], [0, 2, 1.0], [0, 0, -1.0]], 1.5)
    assert np.ndim(circle.ray_distances((0.0, 0.0), 0.3)) == 0
    assert np.shape(circle.ray_distances((0.0, 0.0), [0.3])) == (1,)


def test_non_star_shaped_region_raises():
    # two unit disks at x = 0 and x = 2.5: the ray along +x leaves and re-enters
    dumbbell = ImplicitRegion(
        lambda x, y: np.minimum(np.square(x) + np.square(y) - 1.0,
                                np.square(np.asarray(x) - 2.5) + np.square(y) - 1.0),
        bounding_radius=4.0,
    )
    with pytest.raises(NonStarShaped):
        dumbbell.ray_distances((0.0, 0.0), np.array([0.0]))
    assert ray_boundary_distance(dumbbell, (0.0, 0.0), np.pi / 2) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize(
    "start, end, width",
    [(0.0, np.pi, np.pi), (3 * np.pi / 2, np.pi / 2, np.pi), (1.0, 1.0, 0.0), (6.0, 0.5, 0.5 + 2 * np.pi - 6.0)],
)
def test_sector_angular_width(start, end, width):
    assert sector_angular_width(start, end) == pytest.approx(width, abs=1e-12)


def test_full_sector_width():
    assert Sector.full((0.0, 0.0)).width == pytest.approx(2 * np.pi)
    assert Sector((0.0, 0.0), 2.0, 2.0).width == 0.0


def test_point_in_sector_wraps(unit_disk):
    right_half = Sector((0.0, 0.0), 3 * np.pi / 2, np.pi / 2)
    assert point_in_sector(right_half, unit_disk, (0.5, 0.0))
    assert point_in_sector(right_half, unit_disk, (0.5, -0.4))
    assert not point_in_sector(right_half, unit_disk, (-0.5, 0.0))
    assert not point_in_sector(right_half, unit_disk, (1.5, 0.0))
    # the reference point belongs to its own sector
    assert point_in_sector(right_half, unit_disk, (0.0, 0.0))


def test_points_in_sector_vectorised(unit_disk):
    sector = Sector((0.0, 0.0), 0.0, np.pi / 2)
    x = np.array([0.5, -0.5, 0.5, 0.2])
    y = np.array([0.5, 0.5, -0.5, 0.1])
    assert points_in_sector(sector, unit_disk, x, y).tolist() == [True, False, False, True]


def test_sector_polyline_closes_on_reference(ellipse):
    sector = Sector((1.0, 0.5), 0.2, 2.0)
    outline = sector_polyline(sector, ellipse, samples=17)
    assert len(outline) == 19
    assert outline[0] == outline[-1] == [1.0, 0.5]
    arc = np.array(outline[1:-1])
    assert np.allclose(ellipse.level(arc[:, 0], arc[:, 1]), 0.0, atol=1e-12)


def test_ellipse_rejects_bad_axes():
    with pytest.raises(ValueError):
        Ellipse(0.0, 1.0)


def test_region_to_dict(ellipse):
    assert ellipse.to_dict() == {"type": "ellipse", "a": 5.0, "b": 3.0}
    region = polynomial_region([[2, 0, 1.0], [0, 2, 1.0], [0, 0, -1.0]], 1.5)
    assert region.to_dict()["type"] == "implicit"
