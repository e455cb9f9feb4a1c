from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple, Union

import numpy as np

from src.constants import TWO_DISK_MARGIN
from src.entity.geometry_entity import Configuration, Disk, Geodesic, Plane, Point


@dataclass(frozen=True, eq=False)
class Arc:
    """Arc of the circle of ``disks[disk_index]``, CCW from start_angle to end_angle (radians, center frame)."""
    disk_index: int
    start_angle: float
    end_angle: float

    @property
    def sweep(self) -> float:
        return self.end_angle - self.start_angle


@dataclass(frozen=True, eq=False)
class Segment:
    """Geodesic segment; ``line`` is the supporting geodesic with the region on its positive side."""
    start: Point
    end: Point
    line: Optional[Geodesic] = None


Piece = Union[Arc, Segment]


@dataclass(eq=False)
class BoundaryChain:
    """Cyclic CCW sequence of arcs and segments bounding a convex region."""
    plane: Plane
    disks: List[Disk]
    pieces: List[Piece] = field(default_factory=list)

    @property
    def arcs(self) -> List[Arc]:
        return [p for p in self.pieces if isinstance(p, Arc)]

    @property
    def segments(self) -> List[Segment]:
        return [p for p in self.pieces if isinstance(p, Segment)]

    @property
    def is_single_circle(self) -> bool:
        return len(self.pieces) == 1 and isinstance(self.pieces[0], Arc)

    def hull_disk_indices(self) -> List[int]:
        """Distinct disks contributing an arc, in first-appearance order."""
        seen: List[int] = []
        for arc in self.arcs:
            if arc.disk_index not in seen:
                seen.append(arc.disk_index)
        return seen


@dataclass(frozen=True, eq=False)
class TreeVertex:
    point: Point
    radius: float
    disk_index: Optional[int] = None


@dataclass(eq=False)
class GeodesicTree:
    plane: Plane
    vertices: List[TreeVertex] = field(default_factory=list)
    edges: List[Tuple[int, int]] = field(default_factory=list)

    def adjacency(self) -> Dict[int, Set[int]]:
        adj: Dict[int, Set[int]] = {i: set() for i in range(len(self.vertices))}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def degree(self, index: int) -> int:
        return len(self.adjacency()[index])

    def leaves(self) -> List[int]:
        return [i for i, nbrs in self.adjacency().items() if len(nbrs) == 1]

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj = self.adjacency()
        stack, seen = [0], {0}
        while stack:
            for nbr in adj[stack.pop()]:
                if nbr not in seen:
                    seen.add(nbr)
                    stack.append(nbr)
        return len(seen) == len(self.vertices)

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == len(self.vertices) - 1


@dataclass(eq=False)
class IntersectionRegion:
    """U = intersection of the disks: arcs only, vertices q_1..q_m where consecutive arcs meet."""
    plane: Plane
    disks: List[Disk]
    chain: BoundaryChain
    vertices: List[Point] = field(default_factory=list)
    empty_flag: bool = False
    full_disk_index: Optional[int] = None
    witness: Optional[Point] = None

    @property
    def full_disk_flag(self) -> bool:
        return self.full_disk_index is not None

    @property
    def has_interior(self) -> bool:
        return not self.empty_flag and len(self.chain.pieces) > 0


@dataclass(frozen=True, eq=False)
class Spindle:
    """Intersection of all radius-rho disks containing p and q, bounded by two radius-rho arcs."""
    plane: Plane
    p: Point
    q: Point
    rho: float
    arc_centers: Tuple[Point, ...] = ()

    @property
    def is_point(self) -> bool:
        return len(self.arc_centers) == 0

    @property
    def is_full_disk(self) -> bool:
        return len(self.arc_centers) == 1


@dataclass(frozen=True)
class HyperconvexityReport:
    rho: float
    pairs: int
    boundary_points: int
    worst_excess: float
    passed: bool


@dataclass(frozen=True, eq=False)
class CoveringDisk:
    disk: Disk
    contacts: Tuple[Point, ...] = ()


@dataclass(eq=False)
class ContractionPair:
    original: Configuration
    contracted: Configuration


@dataclass(frozen=True)
class ContractionReport:
    is_contraction: bool
    max_violation: float
    worst_pair: Optional[Tuple[int, int]]


@dataclass(frozen=True)
class DecompositionReport:
    leaf_index: int
    neighbor_index: int
    samples: int
    union_mismatches: int
    intersection_mismatches: int
    hull_y_mismatches: int
    perimeter_union: float
    perimeter_x: float
    perimeter_y: float
    perimeter_intersection: float
    perimeter_residual: float
    passed: bool


@dataclass(frozen=True)
class DualityReport:
    vertex_count: int
    dual_vertex_count: int
    edge_count: int
    dual_edge_count: int
    max_vertex_error: float
    pole: Tuple[float, ...]
    passed: bool


@dataclass(frozen=True)
class TwoDiskComparison:
    foot_distance_before: float
    foot_distance_after: float
    angle_before: float
    angle_after: float
    distance_decreased: bool
    contracted_inside_hull: bool
    foot_margin: float
    angle_margin: float
    nested: bool = False
    hyperbolic: bool = True

    @property
    def inequalities_apply(self) -> bool:
        """Feet and angle only compare for a hyperbolic pair pulled closer that escapes the old hull."""
        return self.hyperbolic and not self.nested and self.distance_decreased and not self.contracted_inside_hull

    @property
    def passed(self) -> bool:
        if not self.inequalities_apply:
            return True
        return self.foot_margin > -TWO_DISK_MARGIN and self.angle_margin > -TWO_DISK_MARGIN


@dataclass(frozen=True)
class AreaDecompositionReport:
    leaf_index: int
    neighbor_index: int
    area_region: float
    area_without_leaf: float
    area_difference: float
    residual: float
    passed: bool
