import numpy as np
import pytest
from hypothesis import given, settings

from src.entity.geometry_entity import Configuration, Disk, Plane
from src.entity.shape_entity import Arc
from src.exception import DomainError, HemisphereError
from src.geometry import kernel
from src.geometry.disk_hull import (certify_hemisphere, check_chain,
                                    gauss_bonnet_residual, hull_boundary,
                                    hull_contains, hull_perimeter,
                                    piece_length, prune_nested, signed_depth,
                                    two_disk_comparison, two_disk_perimeter)
from src.geometry.oracles import polygonal_perimeter
from tests.conftest import configurations, euclidean_config

H = Plane.hyperbolic(1.0)


def test_single_disk_is_one_full_arc():
    config = Configuration(H, [Disk(H.origin, 0.7)])
    chain = hull_boundary(config)
    assert len(chain.pieces) == 1 and isinstance(chain.pieces[0], Arc)
    assert hull_perimeter(chain) == pytest.approx(kernel.circle_perimeter(H, 0.7))


def test_two_equal_euclidean_disks(two_disks):
    chain = hull_boundary(two_disks)
    assert len(chain.arcs) == 2 and len(chain.segments) == 2
    for segment in chain.segments:
        assert piece_length(chain, segment) == pytest.approx(3.0, abs=1e-9)
    assert hull_perimeter(chain) == pytest.approx(2 * np.pi + 6.0, abs=1e-9)
    assert sorted(chain.hull_disk_indices()) == [0, 1]


def test_two_hyperbolic_points_give_a_doubled_segment():
    config = Configuration(H, [Disk(H.origin, 0.0), Disk(kernel.point_from_polar(H, 2.0, 0.0), 0.0)])
    assert hull_perimeter(hull_boundary(config)) == pytest.approx(4.0, abs=1e-9)


def test_nested_disks_are_pruned():
    config = euclidean_config((0.0, 0.0, 2.0), (0.5, 0.0, 1.0), (0.0, 0.0, 2.0))
    assert prune_nested(config) == [0]
    assert hull_perimeter(hull_boundary(config)) == pytest.approx(4 * np.pi)


def test_closed_form_two_disk_perimeter_matches_the_chain():
    d1 = Disk(H.origin, 0.5)
    d2 = Disk(kernel.point_from_polar(H, 1.2, 0.4), 0.2)
    chain = hull_boundary(Configuration(H, [d1, d2]))
    assert two_disk_perimeter(H, d1, d2) == pytest.approx(hull_perimeter(chain), rel=1e-9)


def test_signed_depth_inside_and_outside(two_disks):
    chain = hull_boundary(two_disks)
    assert signed_depth(chain, kernel.point_from_xy(two_disks.plane, 1.5, 0.0)) == pytest.approx(1.0, abs=1e-9)
    assert hull_contains(chain, kernel.point_from_xy(two_disks.plane, 1.5, 0.9))
    assert not hull_contains(chain, kernel.point_from_xy(two_disks.plane, 1.5, 1.1))


def test_gauss_bonnet_closes_on_a_hyperbolic_hull():
    disks = [Disk(kernel.point_from_polar(H, 1.0, a), r) for a, r in ((0.0, 0.3), (2.0, 0.5), (4.0, 0.1))]
    chain = hull_boundary(Configuration(H, disks))
    assert gauss_bonnet_residual(chain) < 1e-7


def test_spherical_system_outside_every_hemisphere():
    S = Plane.spherical(1.0)
    axes = [np.array(v, float) for v in np.vstack([np.eye(3), -np.eye(3)])]
    config = Configuration(S, [Disk(a, 0.1) for a in axes])
    with pytest.raises(HemisphereError):
        hull_boundary(config)


def test_hemisphere_certificate_needs_a_spherical_plane(two_disks):
    with pytest.raises(DomainError):
        certify_hemisphere(two_disks)


def test_empty_configuration_is_rejected():
    with pytest.raises(DomainError):
        hull_boundary(Configuration(H, []))


@settings(max_examples=40, deadline=None)
@given(config=configurations())
def test_chain_closes_and_beats_its_inscribed_polygon(config):
    chain = hull_boundary(config)
    check_chain(chain)
    exact = hull_perimeter(chain)
    polygon = polygonal_perimeter(chain, samples=20_000)
    assert polygon <= exact * (1.0 + 1e-9) + 1e-12
    assert polygon == pytest.approx(exact, rel=1e-4, abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(config=configurations(min_disks=2))
def test_perimeter_grows_with_the_system(config):
    smaller = config.subset(range(len(config) - 1))
    assert hull_perimeter(hull_boundary(smaller)) <= hull_perimeter(hull_boundary(config)) * (1.0 + 1e-9) + 1e-12


def _pulled_pair(plane, rng, scale=1.0):
    r1, r2 = scale * rng.uniform(0.1, 1.5, 2)
    d = rng.uniform(abs(r1 - r2) + 0.1 * scale, 4.0 * scale)
    d1 = Disk(plane.origin, r1)
    d2 = Disk(kernel.point_from_polar(plane, d, rng.uniform(0.0, 2 * np.pi)), r2)
    pulled = Disk(kernel.geodesic_point(plane, d1.center, d2.center, rng.uniform(0.05, 0.95)), r2)
    return (d1, d2), (d1, pulled)


def test_nested_pair_is_reported_not_raised():
    outer = Disk(H.origin, 1.0)
    inner = Disk(kernel.point_from_polar(H, 0.2, 0.0), 0.3)
    comparison = two_disk_comparison(H, (outer, inner), (outer, Disk(kernel.point_from_polar(H, 0.1, 0.0), 0.3)))
    assert comparison.nested and comparison.distance_decreased
    assert np.isnan(comparison.foot_margin)
    assert comparison.passed


def test_equal_hyperbolic_disks_pulled_together_escape_the_hull():
    d1, d2 = Disk(H.origin, 1.0), Disk(kernel.point_from_polar(H, 4.0, 0.0), 1.0)
    middle = Disk(kernel.point_from_polar(H, 2.0, 0.0), 1.0)
    comparison = two_disk_comparison(H, (d1, d2), (d1, middle))
    assert comparison.inequalities_apply
    assert comparison.foot_margin > 0 and comparison.angle_margin > 0


def test_tangent_feet_and_angles_compare_on_random_hyperbolic_pairs():
    rng = np.random.default_rng(2024)
    comparisons = [two_disk_comparison(H, *_pulled_pair(H, rng)) for _ in range(400)]
    assert all(c.passed for c in comparisons)
    assert all(c.distance_decreased for c in comparisons)


@pytest.mark.parametrize("plane", [Plane.euclidean(), Plane.spherical(1.0)], ids=["euclidean", "spherical"])
def test_pulled_disk_stays_in_the_hull_without_negative_curvature(plane):
    rng = np.random.default_rng(7)
    for _ in range(100):
        comparison = two_disk_comparison(plane, *_pulled_pair(plane, rng, 0.35 if plane.is_spherical else 1.0))
        assert comparison.nested or comparison.contracted_inside_hull
