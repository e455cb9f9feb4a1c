import numpy as np
import pytest
from hypothesis import assume, given, settings

from src.entity.geometry_entity import Configuration, Disk, Plane
from src.exception import DomainError, SpindleUndefinedError
from src.geometry import kernel
from src.geometry.cocentral_set import (cocentral_sharpen, cocentral_tree,
                                        covering_radius, covers_region,
                                        duality_check, hyperconvexity_check,
                                        intersection_decomposition_check,
                                        min_covering_disk_on_bisector,
                                        spindle, spindle_boundary,
                                        spindle_contains)
from src.geometry.disk_intersection import intersect_disks, region_area
from tests.conftest import configurations, euclidean_config

E = Plane.euclidean()
H = Plane.hyperbolic(1.0)


@pytest.fixture
def curvilinear_square() -> Configuration:
    return euclidean_config((1.0, 1.0, 2.0), (-1.0, 1.0, 2.0), (-1.0, -1.0, 2.0), (1.0, -1.0, 2.0))


def test_spindle_arc_centers():
    p, q = kernel.point_from_xy(E, 0, 0), kernel.point_from_xy(E, 1, 0)
    s = spindle(E, p, q, 1.0)
    centers = sorted((round(float(c[0]), 9), round(float(c[1]), 9)) for c in s.arc_centers)
    h = round(np.sqrt(3) / 2, 9)
    assert centers == [(0.5, -h), (0.5, h)]
    assert spindle_contains(s, kernel.point_from_xy(E, 0.5, 0.0))
    assert not spindle_contains(s, kernel.point_from_xy(E, 0.5, 0.3))


def test_spindle_degenerate_cases():
    p = kernel.point_from_xy(E, 0, 0)
    assert spindle(E, p, p, 1.0).is_point
    assert spindle(E, p, kernel.point_from_xy(E, 2, 0), 1.0).is_full_disk
    with pytest.raises(SpindleUndefinedError):
        spindle(E, p, kernel.point_from_xy(E, 2.5, 0), 1.0)


def test_hyperbolic_spindle_arcs_pass_through_both_ends():
    p, q = H.origin, kernel.point_from_polar(H, 1.0, 0.7)
    s = spindle(H, p, q, 0.8)
    for c in s.arc_centers:
        assert float(kernel.distance(H, c, p)) == pytest.approx(0.8, abs=1e-9)
        assert float(kernel.distance(H, c, q)) == pytest.approx(0.8, abs=1e-9)


def test_lens_tree_joins_the_two_centers(lens):
    region = intersect_disks(lens)
    tree = cocentral_tree(region)
    assert len(tree.vertices) == 2 and tree.edges == [(0, 1)]
    assert sorted(round(float(v.point[0]), 9) for v in tree.vertices) == [0.0, 1.0]
    assert covering_radius(region, lens.disks[0].center) == pytest.approx(1.0, abs=1e-9)


def test_full_disk_tree_is_one_vertex():
    region = intersect_disks(Configuration(H, [Disk(H.origin, 0.5), Disk(H.origin, 0.9)]))
    tree = cocentral_tree(region)
    assert len(tree.vertices) == 1 and not tree.edges
    assert tree.vertices[0].radius == pytest.approx(0.5)


def test_curvilinear_square_gives_an_x(curvilinear_square):
    region = intersect_disks(curvilinear_square)
    tree = cocentral_tree(region)
    assert len(tree.vertices) == 5 and len(tree.edges) == 4
    hub = max(range(5), key=tree.degree)
    assert np.allclose(tree.vertices[hub].point, [0.0, 0.0, 1.0], atol=1e-7)
    assert tree.vertices[hub].radius == pytest.approx(np.sqrt(3) - 1.0, abs=1e-7)
    for vertex in tree.vertices:
        assert covers_region(region, Disk(vertex.point, vertex.radius), tol=1e-7)
        assert covering_radius(region, vertex.point) == pytest.approx(vertex.radius, abs=1e-7)


def test_empty_region_has_no_tree():
    region = intersect_disks(euclidean_config((0.0, 0.0, 1.0), (3.0, 0.0, 1.0)))
    with pytest.raises(DomainError):
        cocentral_tree(region)


def test_sharpened_lens_satisfies_the_area_split(lens):
    sharp = cocentral_sharpen(lens)
    assert len(sharp) == 2
    assert region_area(intersect_disks(sharp)) == pytest.approx(region_area(intersect_disks(lens)), abs=1e-9)
    report = intersection_decomposition_check(sharp)
    assert report.passed and report.residual < 1e-9


def test_cocentral_sharpen_shrinks_a_redundant_large_disk(lens):
    config = Configuration(lens.plane, lens.disks + [Disk(kernel.point_from_xy(lens.plane, 0.7, 0.2), 5.0)])
    sharp = cocentral_sharpen(config)
    region = intersect_disks(sharp)
    assert region_area(region) == pytest.approx(region_area(intersect_disks(lens)), abs=1e-9)
    shrunk = sharp.disks[2]
    moved = float(kernel.distance(config.plane, shrunk.center, config.disks[2].center))
    assert shrunk.radius <= 1.0 + 1e-7
    assert 5.0 - shrunk.radius >= moved - 1e-9
    assert covers_region(region, shrunk, tol=1e-7)
    assert covering_radius(region, shrunk.center) == pytest.approx(shrunk.radius, abs=1e-7)


def test_lens_tree_matches_its_dual(lens):
    report = duality_check(intersect_disks(lens), lens)
    assert report.passed
    assert report.vertex_count == report.dual_vertex_count == 2
    assert report.edge_count == report.dual_edge_count == 1


def test_covering_centers_on_the_lens_bisector_end_at_the_original_disks(lens):
    region = intersect_disks(lens)
    q_i, q_j = region.vertices[0], region.vertices[1]
    ends = min_covering_disk_on_bisector(region, q_i, q_j)
    assert ends is not None
    centers = sorted(float(end.disk.center[0]) for end in ends)
    assert centers == pytest.approx([0.0, 1.0], abs=1e-6)
    for end in ends:
        assert end.disk.radius == pytest.approx(1.0, abs=1e-6)
        assert covers_region(region, end.disk, tol=1e-6)


def test_spindle_outline_lies_on_both_arcs():
    p, q = H.origin, kernel.point_from_polar(H, 1.0, 0.7)
    s = spindle(H, p, q, 0.8)
    outline = spindle_boundary(s, 100)
    assert len(outline) >= 50
    for x in outline:
        assert spindle_contains(s, x, tol=1e-9)
        assert min(abs(float(kernel.distance(H, x, c)) - 0.8) for c in s.arc_centers) <= 1e-9


def test_intersections_hold_the_spindles_of_their_largest_radius(lens, curvilinear_square):
    for config in (lens, curvilinear_square):
        report = hyperconvexity_check(intersect_disks(config), rng=np.random.default_rng(4))
        assert report.passed and report.rho == pytest.approx(max(config.radii))
        assert report.worst_excess <= 1e-8


def test_spindles_of_a_smaller_radius_leave_the_lens(lens):
    report = hyperconvexity_check(intersect_disks(lens), rho=0.9, rng=np.random.default_rng(4), pairs=200)
    assert not report.passed and report.worst_excess > 1e-3


@settings(max_examples=25, deadline=None)
@given(config=configurations(min_disks=2, radius_max=1.0, spread=0.3))
def test_random_intersections_are_hyperconvex(config):
    region = intersect_disks(config)
    assume(not region.empty_flag)
    assert hyperconvexity_check(region, rng=np.random.default_rng(0), pairs=10).passed
