import numpy as np
import pytest
from hypothesis import given, settings

from src.entity.geometry_entity import Configuration, Disk, Plane
from src.geometry import kernel
from src.geometry.disk_intersection import (intersect_disks, is_nonempty,
                                            lens_area, prune_supersets,
                                            region_area, region_contains)
from src.geometry.oracles import intersection_indicator, monte_carlo_area
from tests.conftest import configurations, euclidean_config

H = Plane.hyperbolic(1.0)
LENS_AREA = 2 * np.pi / 3 - np.sqrt(3) / 2


def test_unit_lens(lens):
    region = intersect_disks(lens)
    assert region.has_interior and not region.full_disk_flag
    corners = sorted((round(float(v[0]), 9), round(float(v[1]), 9)) for v in region.vertices)
    assert corners == [(0.5, round(-np.sqrt(3) / 2, 9)), (0.5, round(np.sqrt(3) / 2, 9))]
    assert region_area(region) == pytest.approx(LENS_AREA, abs=1e-9)
    assert lens_area(lens.plane, *lens.disks) == pytest.approx(LENS_AREA, abs=1e-9)


def test_single_disk_is_the_full_disk():
    region = intersect_disks(Configuration(H, [Disk(H.origin, 1.0)]))
    assert region.full_disk_flag and region.full_disk_index == 0
    assert region_area(region) == pytest.approx(2 * np.pi * (np.cosh(1.0) - 1.0))


def test_disjoint_disks_are_empty():
    region = intersect_disks(euclidean_config((0.0, 0.0, 1.0), (3.0, 0.0, 1.0)))
    assert region.empty_flag and region_area(region) == 0.0


def test_touching_disks_meet_in_one_point():
    region = intersect_disks(euclidean_config((0.0, 0.0, 1.0), (2.0, 0.0, 1.0)))
    assert not region.empty_flag and not region.has_interior
    assert np.allclose(region.witness, [1.0, 0.0, 1.0], atol=1e-4)
    assert region_area(region) == 0.0


def test_pairwise_overlap_does_not_mean_a_common_point():
    side, r = 2.0, 1.05
    config = euclidean_config((0.0, 0.0, r), (side, 0.0, r), (side / 2, side * np.sqrt(3) / 2, r))
    nonempty, witness = is_nonempty(config)
    assert not nonempty and witness is None


def test_concentric_disks_share_their_center():
    config = Configuration(H, [Disk(H.origin, 1.0), Disk(H.origin, 0.5)])
    nonempty, witness = is_nonempty(config)
    assert nonempty
    assert float(kernel.distance(H, witness, H.origin)) < 1e-9
    assert prune_supersets(config) == [1]


def test_hyperbolic_lens_against_monte_carlo():
    q = kernel.point_from_polar(H, 1.0, 0.0)
    config = Configuration(H, [Disk(H.origin, 1.0), Disk(q, 1.0)])
    region = intersect_disks(config)
    middle = kernel.geodesic_point(H, H.origin, q, 0.5)
    estimate, error = monte_carlo_area(H, intersection_indicator(region), middle, 1.0, samples=40_000, seed=3)
    exact = region_area(region)
    assert exact == pytest.approx(lens_area(H, *config.disks), rel=1e-9)
    assert abs(estimate - exact) <= 4.0 * error + 1e-9


@settings(max_examples=30, deadline=None)
@given(config=configurations(min_disks=2, max_disks=4))
def test_vertices_lie_in_every_disk(config):
    region = intersect_disks(config)
    if region.empty_flag:
        return
    if region.vertices:
        assert np.all(region_contains(region, np.array(region.vertices), tol=1e-7))
    assert np.all(region_contains(region, region.witness, tol=1e-7))
    area = region_area(region)
    assert 0.0 <= area <= min(kernel.circle_area(config.plane, r) for r in config.radii) * (1.0 + 1e-9) + 1e-12
