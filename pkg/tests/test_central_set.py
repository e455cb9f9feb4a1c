import numpy as np
import pytest
from hypothesis import given, settings

from src.entity.geometry_entity import Configuration, Disk, Plane
from src.exception import TreeStructureError
from src.geometry import kernel
from src.geometry.central_set import (central_tree, inscribed_radius, sharpen,
                                      tree_decomposition_check)
from src.geometry.disk_hull import hull_boundary, hull_perimeter
from src.geometry.oracles import grid_central_vertices, grid_local_maxima
from tests.conftest import configurations

H = Plane.hyperbolic(1.0)


def test_inscribed_radius_at_the_waist(two_disks):
    chain = hull_boundary(two_disks)
    assert inscribed_radius(chain, kernel.point_from_xy(two_disks.plane, 1.5, 0.0)) == pytest.approx(1.0, abs=1e-9)


def test_two_disks_give_a_single_edge(two_disks):
    tree = central_tree(two_disks)
    assert len(tree.vertices) == 2 and tree.edges == [(0, 1)]
    centers = sorted(round(float(v.point[0]), 9) for v in tree.vertices)
    assert centers == [0.0, 3.0]


def test_single_disk_tree_is_its_center():
    tree = central_tree(Configuration(H, [Disk(H.origin, 0.4)]))
    assert len(tree.vertices) == 1 and not tree.edges
    assert tree.vertices[0].radius == pytest.approx(0.4)


def test_square_of_four_gives_an_x(square_of_four):
    tree = central_tree(square_of_four)
    assert len(tree.vertices) == 5 and len(tree.edges) == 4
    hub = max(range(5), key=tree.degree)
    assert tree.degree(hub) == 4
    assert np.allclose(tree.vertices[hub].point, [0.0, 0.0, 1.0], atol=1e-7)
    assert tree.vertices[hub].radius == pytest.approx(3.0, abs=1e-7)


def test_hub_matches_the_deepest_grid_maximum(square_of_four):
    chain = hull_boundary(square_of_four)
    maxima = grid_local_maxima(chain, square_of_four.plane.origin, extent=3.5, resolution=40)
    point, depth = maxima[0]
    assert depth == pytest.approx(3.0, abs=1e-6)
    assert np.allclose(point[:2], [0.0, 0.0], atol=1e-4)


def _match_grid_vertices(config, resolution):
    chain = hull_boundary(config)
    found = grid_central_vertices(chain, config.plane.origin, extent=3.5, resolution=resolution)
    tree = central_tree(config, chain)
    assert len(found) == len(tree.vertices)
    for vertex in tree.vertices:
        gaps = [float(kernel.distance(config.plane, vertex.point, point)) for point, _ in found]
        nearest = int(np.argmin(gaps))
        assert gaps[nearest] <= 1e-3
        assert found[nearest][1] == pytest.approx(vertex.radius, abs=1e-3)


def test_every_vertex_of_the_x_matches_a_brute_force_maximal_disk(square_of_four):
    _match_grid_vertices(square_of_four, resolution=120)


@pytest.mark.slow
def test_every_vertex_of_the_x_matches_the_full_grid(square_of_four):
    _match_grid_vertices(square_of_four, resolution=400)


def test_sharpen_keeps_the_hull_and_adds_the_hub(square_of_four):
    sharp = sharpen(square_of_four)
    assert len(sharp) == 5
    assert hull_perimeter(hull_boundary(sharp)) == pytest.approx(hull_perimeter(hull_boundary(square_of_four)))
    hub = [d for d in sharp.disks if d.radius > 2.0]
    assert len(hub) == 1 and hub[0].radius == pytest.approx(3.0, abs=1e-7)
    chain = hull_boundary(sharp)
    for disk in sharp.disks:
        assert inscribed_radius(chain, disk.center) == pytest.approx(disk.radius, abs=1e-7)


def test_sharpen_grows_a_waist_disk_to_a_maximal_one(two_disks):
    config = Configuration(two_disks.plane, two_disks.disks + [Disk(kernel.point_from_xy(two_disks.plane, 1.2, 0.1), 0.2)])
    sharp = sharpen(config)
    chain = hull_boundary(sharp)
    assert hull_perimeter(chain) == pytest.approx(hull_perimeter(hull_boundary(config)))
    grown = sharp.disks[2]
    moved = float(kernel.distance(config.plane, grown.center, config.disks[2].center))
    assert grown.radius == pytest.approx(1.0, abs=1e-7)
    assert grown.radius - 0.2 >= moved - 1e-9
    assert abs(grown.center[1]) <= 1e-7 and -1e-7 <= grown.center[0] <= 3.0 + 1e-7
    assert inscribed_radius(chain, grown.center) == pytest.approx(grown.radius, abs=1e-7)


def test_decomposition_at_a_leaf(square_of_four):
    report = tree_decomposition_check(sharpen(square_of_four), seed=7, samples=2000)
    assert report.passed
    assert report.union_mismatches == report.intersection_mismatches == report.hull_y_mismatches == 0
    assert report.perimeter_residual < 1e-9


def test_decomposition_needs_a_sharpened_system(square_of_four):
    with pytest.raises(TreeStructureError):
        tree_decomposition_check(square_of_four, samples=100)


@settings(max_examples=25, deadline=None)
@given(config=configurations(kinds=("hyperbolic", "euclidean")))
def test_central_set_is_a_tree_of_inscribed_disks(config):
    chain = hull_boundary(config)
    tree = central_tree(config, chain)
    assert tree.is_tree()
    for vertex in tree.vertices:
        assert vertex.radius == pytest.approx(inscribed_radius(chain, vertex.point), abs=1e-6)
