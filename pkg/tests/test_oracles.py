import numpy as np
import pytest

from src.entity.geometry_entity import Configuration, Disk, Plane
from src.geometry import kernel
from src.geometry.contraction import random_configuration
from src.geometry.disk_hull import hull_boundary, hull_perimeter, signed_depth
from src.geometry.disk_intersection import intersect_disks
from src.geometry.oracles import (depth_along, depth_field, hull_indicator,
                                  intersection_indicator, monte_carlo_area,
                                  polygonal_circle_perimeter,
                                  polygonal_perimeter, shrinking_ball_centers)


@pytest.mark.parametrize("plane", [Plane.hyperbolic(1.0), Plane.euclidean(), Plane.spherical(1.0)],
                         ids=lambda p: p.kind.value)
def test_inscribed_polygon_approaches_the_circle(plane):
    exact = kernel.circle_perimeter(plane, 0.8)
    polygon = polygonal_circle_perimeter(plane, 0.8, sides=100_000)
    assert polygon <= exact
    assert polygon == pytest.approx(exact, rel=1e-8)


def test_disk_area_by_sampling_is_reproducible():
    plane = Plane.hyperbolic(1.0)
    region = intersect_disks(Configuration(plane, [Disk(plane.origin, 0.6)]))
    first = monte_carlo_area(plane, intersection_indicator(region), plane.origin, 1.0, samples=20_000, seed=9, shards=4)
    second = monte_carlo_area(plane, intersection_indicator(region), plane.origin, 1.0, samples=20_000, seed=9, shards=4)
    assert first == second
    estimate, error = first
    assert abs(estimate - kernel.circle_area(plane, 0.6)) <= 4.0 * error


def test_hull_indicator_marks_the_waist(two_disks):
    chain = hull_boundary(two_disks)
    inside = hull_indicator(chain)(np.array([[1.5, 0.0, 1.0], [1.5, 2.0, 1.0]]))
    assert inside.tolist() == [True, False]


def test_polygonal_hull_perimeter(two_disks):
    chain = hull_boundary(two_disks)
    assert polygonal_perimeter(chain, samples=50_000) == pytest.approx(hull_perimeter(chain), rel=1e-7)


def test_depth_along_the_axis(two_disks):
    chain = hull_boundary(two_disks)
    point, depth = depth_along(chain, two_disks.plane.origin, np.array([1.0, 0.0, 0.0]), extent=3.0)
    assert depth == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("plane", [Plane.hyperbolic(1.0), Plane.euclidean(), Plane.spherical(1.0)],
                         ids=lambda p: p.kind.value)
def test_depth_field_agrees_with_pointwise_depth(plane):
    rng = np.random.default_rng(12)
    chain = hull_boundary(random_configuration(plane, rng, 3, 6, radius_max=0.6, spread=1.0))
    points = kernel.sample_ball(plane, plane.origin, 1.5 if not plane.is_spherical else 0.7, 200, rng)
    expected = [signed_depth(chain, x) for x in points]
    assert np.allclose(depth_field(chain, points), expected, atol=1e-12)


def test_shrinking_balls_on_the_arcs_end_at_the_disk_centers(two_disks):
    centers, radii = shrinking_ball_centers(hull_boundary(two_disks), samples=400)
    assert np.all(radii <= 1.0 + 1e-9)
    at_ends = np.isclose(centers[:, 0], 0.0, atol=1e-8) | np.isclose(centers[:, 0], 3.0, atol=1e-8)
    assert np.count_nonzero(at_ends) >= 100


@pytest.mark.slow
def test_full_size_lens_area_estimate(lens):
    from src.geometry.disk_intersection import region_area
    region = intersect_disks(lens)
    estimate, error = monte_carlo_area(lens.plane, intersection_indicator(region),
                                       kernel.point_from_xy(lens.plane, 0.5, 0.0), 1.0,
                                       samples=1_000_000, seed=1, shards=8)
    assert abs(estimate - region_area(region)) <= 4.0 * error
