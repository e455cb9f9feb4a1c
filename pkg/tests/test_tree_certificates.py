import numpy as np
import pytest
from hypothesis import assume, given, settings

from src.entity.geometry_entity import Configuration, Disk, Plane
from src.entity.shape_entity import GeodesicTree
from src.exception import PoleProximityError
from src.geometry import kernel
from src.geometry.central_set import (central_tree, inscribed_radius, sharpen,
                                      tree_decomposition_check)
from src.geometry.cocentral_set import (cocentral_sharpen, cocentral_tree,
                                        contact_points, covering_radius,
                                        covers_region, duality_check,
                                        intersection_decomposition_check)
from src.geometry.contraction import random_configuration, trial_generator
from src.geometry.disk_hull import hull_boundary, sample_chain
from src.geometry.disk_intersection import intersect_disks
from src.geometry.skeleton import subdivide
from tests.conftest import configurations


def _boundary_touches(chain, point, radius, samples=4000) -> int:
    """Local minima of the distance from ``point`` to the sampled chain that sit on the circle."""
    d = kernel.distance(chain.plane, point, sample_chain(chain, samples))
    return int(np.sum((d <= np.roll(d, 1)) & (d < np.roll(d, -1)) & (d <= radius + 1e-4)))


def _check_central(config: Configuration) -> None:
    sharp = sharpen(config)
    chain = hull_boundary(sharp)
    tree = central_tree(sharp, chain)
    assert tree.is_tree() and len(tree.vertices) - len(tree.edges) == 1
    for index, vertex in enumerate(tree.vertices):
        assert vertex.radius == pytest.approx(inscribed_radius(chain, vertex.point), abs=1e-6)
        if vertex.disk_index is None and tree.degree(index) >= 3 and vertex.radius > 0.05:
            assert _boundary_touches(chain, vertex.point, vertex.radius) >= 3
    _check_centers_on_tree(subdivide(tree, sharp.disks), len(sharp))


def _check_cocentral(config: Configuration) -> None:
    sharp = cocentral_sharpen(config)
    region = intersect_disks(sharp)
    tree = cocentral_tree(region)
    assert tree.is_tree() and len(tree.vertices) - len(tree.edges) == 1
    rho = max(sharp.radii)
    for index, vertex in enumerate(tree.vertices):
        disk = Disk(vertex.point, vertex.radius)
        assert covers_region(region, disk, tol=1e-7)
        assert covering_radius(region, vertex.point) == pytest.approx(vertex.radius, abs=1e-6)
        assert vertex.radius <= rho + 1e-9
        if sharp.plane.is_hyperbolic:
            assert kernel.circle_geodesic_curvature(sharp.plane, vertex.radius) > sharp.plane.k + 1e-9
        if len(tree.vertices) > 1:
            assert len(contact_points(region, disk, tol=1e-5)) >= (3 if tree.degree(index) >= 3 else 2)
    _check_centers_on_tree(subdivide(tree, sharp.disks), len(sharp))


def _check_centers_on_tree(tree: GeodesicTree, count: int) -> None:
    labelled = {vertex.disk_index for vertex in tree.vertices if vertex.disk_index is not None}
    assert labelled == set(range(count))


def _has_open_intersection(config: Configuration) -> bool:
    region = intersect_disks(config)
    return region.has_interior and not region.full_disk_flag


# ------------------------------------------------------------
# CENTRAL TREES
# ------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(config=configurations(min_disks=2, max_disks=6))
def test_sharpened_central_trees_carry_their_certificates(config):
    _check_central(config)


@pytest.mark.parametrize("plane", [Plane.hyperbolic(1.0), Plane.euclidean(), Plane.spherical(1.0)],
                         ids=["hyperbolic", "euclidean", "spherical"])
def test_seeded_sharpened_systems_keep_every_center_on_the_tree(plane):
    for trial in range(25):
        _check_central(random_configuration(plane, trial_generator(21, trial), 2, 6, radius_max=0.8, spread=1.5))


@settings(max_examples=20, deadline=None)
@given(config=configurations(kinds=("hyperbolic", "euclidean"), min_disks=2, max_disks=6))
def test_hull_splits_at_a_leaf_of_random_sharpened_systems(config):
    sharp = sharpen(config)
    assume(len(sharp) > 1)
    report = tree_decomposition_check(sharp, seed=3, samples=2000)
    assert report.passed
    assert report.perimeter_residual <= 1e-7 * (1.0 + report.perimeter_union)


# ------------------------------------------------------------
# CO-CENTRAL TREES
# ------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(config=configurations(kinds=("hyperbolic", "euclidean"), min_disks=2, max_disks=6,
                              radius_max=1.0, spread=0.3))
def test_sharpened_cocentral_trees_carry_their_certificates(config):
    assume(_has_open_intersection(config))
    _check_cocentral(config)


@pytest.mark.parametrize("plane", [Plane.hyperbolic(1.0), Plane.euclidean()], ids=["hyperbolic", "euclidean"])
def test_seeded_cocentral_systems_keep_every_center_on_the_tree(plane):
    checked = 0
    for trial in range(60):
        config = random_configuration(plane, trial_generator(31, trial), 2, 6, radius_max=1.0, spread=0.3)
        if _has_open_intersection(config):
            _check_cocentral(config)
            checked += 1
    assert checked >= 5


@settings(max_examples=20, deadline=None)
@given(config=configurations(kinds=("hyperbolic", "euclidean"), min_disks=2, max_disks=6,
                              radius_max=1.0, spread=0.3))
def test_intersection_splits_at_a_leaf_of_random_sharpened_systems(config):
    assume(_has_open_intersection(config))
    sharp = cocentral_sharpen(config)
    assume(not intersect_disks(sharp).full_disk_flag)
    assert intersection_decomposition_check(sharp).passed


@settings(max_examples=25, deadline=None)
@given(config=configurations(kinds=("hyperbolic",), min_disks=2, max_disks=6, radius_max=1.0, spread=0.3))
def test_hyperbolic_cocentral_trees_match_their_duals(config):
    region = intersect_disks(config)
    assume(_has_open_intersection(config))
    try:
        report = duality_check(region, config)
    except PoleProximityError:
        assume(False)
    assert report.passed
    assert report.vertex_count == report.dual_vertex_count
    assert report.edge_count == report.dual_edge_count
    assert report.max_vertex_error <= 1e-6
