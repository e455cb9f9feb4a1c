"""
Tree assembly shared by the central set of a hull and the co-central set of an intersection.

Both trees are dual to a triangulation of a cyclic sequence of generators:

    central set      generators are the tangent segments' lines, apexes are points
                     equidistant from three lines (centers of inscribed disks)
    co-central set   generators are the corners of the region, apexes are circumcenters
                     of three corners (centers of covering disks)

Between two consecutive generators sits an ear, the disk of the arc joining them. The
triangulation is grown from the ear of the closing side (m-1, 0): for a base side (a, b)
every intermediate generator c is scored by the caller, and the best apex wins. Scores
are <= 0 with 0 meaning the apex disk is empty (inscribed) or covering, so one apex per
base side scores 0 up to rounding.
"""
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from src.constants import TREE_VERTEX_TOL
from src.entity.geometry_entity import Disk, Plane, Point
from src.entity.shape_entity import GeodesicTree, TreeVertex
from src.exception import TreeStructureError
from src.geometry import kernel
from src.logger import logging

# apex(a, b, c) -> (point, radius, score) or None when the three generators admit no apex
ApexFunction = Callable[[int, int, int], Optional[Tuple[Point, float, float]]]


@dataclass(frozen=True)
class Ear:
    point: Point
    radius: float
    disk_index: Optional[int] = None


class TreeBuilder:
    """
    Accumulates vertices (merging those closer than the tolerance) and undirected edges.

    Merging can identify two vertices that are not neighbours; the edge that would then
    close a cycle is dropped, so the builder only ever holds a forest.
    """

    def __init__(self, plane: Plane, merge_tol: float = TREE_VERTEX_TOL):
        self.plane = plane
        self.merge_tol = merge_tol
        self.vertices: List[TreeVertex] = []
        self.edges: List[Tuple[int, int]] = []
        self._parent: List[int] = []

    def add_vertex(self, point: Point, radius: float, disk_index: Optional[int] = None) -> int:
        for index, vertex in enumerate(self.vertices):
            if float(kernel.distance(self.plane, vertex.point, point)) <= self.merge_tol:
                if vertex.disk_index is None and disk_index is not None:
                    self.vertices[index] = TreeVertex(vertex.point, vertex.radius, disk_index)
                return index
        self.vertices.append(TreeVertex(np.asarray(point, float), float(radius), disk_index))
        self._parent.append(len(self._parent))
        return len(self.vertices) - 1

    def _root(self, index: int) -> int:
        while self._parent[index] != index:
            self._parent[index] = self._parent[self._parent[index]]
            index = self._parent[index]
        return index

    def add_edge(self, a: int, b: int) -> None:
        if a == b:
            return
        edge = (min(a, b), max(a, b))
        if edge in self.edges:
            return
        root_a, root_b = self._root(a), self._root(b)
        if root_a == root_b:
            logging.debug(f"edge {edge} would close a cycle through merged vertices; dropped")
            return
        self._parent[root_a] = root_b
        self.edges.append(edge)

    def build(self) -> GeodesicTree:
        return GeodesicTree(self.plane, list(self.vertices), sorted(self.edges))


def dual_tree(plane: Plane, ears: Sequence[Ear], apex: ApexFunction,
              merge_tol: float = TREE_VERTEX_TOL) -> GeodesicTree:
    """
    Assembles the tree dual to the best-scoring triangulation of len(ears) cyclic generators.

    ``ears[s]`` lies between generators s and s+1 (mod m). A base side without any apex
    hangs its two halves on the parent vertex.
    """
    m = len(ears)
    if m < 2:
        raise TreeStructureError(f"need at least two generators, got {m}")
    builder = TreeBuilder(plane, merge_tol)
    ear_ids = [builder.add_vertex(e.point, e.radius, e.disk_index) for e in ears]
    if m == 2:
        builder.add_edge(ear_ids[0], ear_ids[1])
        return builder.build()

    # (first, last, parent vertex): triangulate generators first..last over the base side (first, last)
    stack = [(0, m - 1, ear_ids[m - 1])]
    while stack:
        first, last, parent = stack.pop()
        best = None
        for c in range(first + 1, last):
            found = apex(first, c, last)
            if found is None:
                continue
            point, radius, score = found
            if best is None or score > best[3]:
                best = (c, point, radius, score)
        if best is None:
            logging.warning(f"no apex over the side ({first}, {last}); splitting at its middle generator")
            c, node = (first + last) // 2, parent
        else:
            c, point, radius, score = best
            if score < -1e-6:
                logging.warning(f"apex over ({first}, {last}) misses by {score:.3e}")
            node = builder.add_vertex(point, radius)
            builder.add_edge(parent, node)
        for lo, hi in ((first, c), (c, last)):
            if hi == lo + 1:
                builder.add_edge(node, ear_ids[lo])
            else:
                stack.append((lo, hi, node))
    tree = builder.build()
    if not tree.is_tree():
        raise TreeStructureError(f"assembled graph is not a tree: {len(tree.vertices)} vertices, {len(tree.edges)} edges")
    return tree


def single_vertex_tree(plane: Plane, point: Point, radius: float, disk_index: Optional[int] = None) -> GeodesicTree:
    return GeodesicTree(plane, [TreeVertex(np.asarray(point, float), float(radius), disk_index)], [])


def label_vertices(tree: GeodesicTree, disks: Sequence[Disk], tol: float = TREE_VERTEX_TOL) -> GeodesicTree:
    """Gives every unlabelled vertex the index of a disk with the same center and radius (within tol)."""
    plane = tree.plane
    labelled = []
    for vertex in tree.vertices:
        if vertex.disk_index is None:
            for index, disk in enumerate(disks):
                if (float(kernel.distance(plane, disk.center, vertex.point)) <= tol
                        and abs(disk.radius - vertex.radius) <= tol):
                    vertex = TreeVertex(vertex.point, vertex.radius, index)
                    break
        labelled.append(vertex)
    return GeodesicTree(plane, labelled, list(tree.edges))


def subdivide(tree: GeodesicTree, disks: Sequence[Disk], tol: float = TREE_VERTEX_TOL) -> GeodesicTree:
    """
    Labels vertices sitting on a disk center and inserts every other center lying on an
    edge (within tol) as a new vertex splitting that edge.
    """
    plane = tree.plane
    builder = TreeBuilder(plane, tol)
    builder.vertices = list(tree.vertices)
    edges = list(tree.edges)
    for index, disk in enumerate(disks):
        point = disk.center
        at = next((v for v, vertex in enumerate(builder.vertices)
                   if float(kernel.distance(plane, vertex.point, point)) <= tol), None)
        if at is not None:
            vertex = builder.vertices[at]
            if vertex.disk_index is None:
                builder.vertices[at] = TreeVertex(vertex.point, vertex.radius, index)
            continue
        for a, b in edges:
            pa, pb = builder.vertices[a].point, builder.vertices[b].point
            gap = float(kernel.distance(plane, pa, point) + kernel.distance(plane, point, pb)
                        - kernel.distance(plane, pa, pb))
            if gap <= tol:
                builder.vertices.append(TreeVertex(np.asarray(point, float), disk.radius, index))
                node = len(builder.vertices) - 1
                edges.remove((a, b))
                edges.extend([(min(a, node), max(a, node)), (min(b, node), max(b, node))])
                break
    return GeodesicTree(plane, builder.vertices, sorted(edges))
