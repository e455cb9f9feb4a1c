"""
Central set of a hull U = conv(union of disks): the tree of centers of maximal inscribed disks.
"""
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import brentq

from src.constants import (DEFAULT_SEED, EPS_GEO, FLAT_JUNCTION_SWEEP,
                           INDUCTION_INDICATOR_SAMPLES,
                           INDUCTION_PERIMETER_TOLERANCE, TOUCH_DEPTH,
                           TREE_VERTEX_TOL)
from src.entity.geometry_entity import Configuration, Disk, Geodesic, Plane, Point
from src.entity.shape_entity import (Arc, BoundaryChain, DecompositionReport,
                                     GeodesicTree, Segment)
from src.exception import (DomainError, GeometryException,
                           TreeStructureError)
from src.geometry import kernel
from src.geometry.disk_hull import (angle_in_arc, hull_boundary,
                                    hull_perimeter, signed_depth)
from src.geometry.skeleton import (Ear, dual_tree, label_vertices,
                                   single_vertex_tree, subdivide)
from src.logger import logging

INDICATOR_BAND = 1e-7


def inscribed_radius(chain: BoundaryChain, p: Point) -> float:
    """Distance from a point of the hull region to its boundary."""
    depth = signed_depth(chain, p)
    if depth < -EPS_GEO:
        raise DomainError(f"point lies outside the hull (depth {depth:.3e})")
    return max(depth, 0.0)


# ------------------------------------------------------------
# TREE
# ------------------------------------------------------------

def _segment_line(plane: Plane, segment: Segment) -> Geodesic:
    if segment.line is not None:
        return segment.line
    return kernel.geodesic_through(plane, segment.start, segment.end)


def _junctions(chain: BoundaryChain) -> List[Tuple[Disk, Optional[int], float, Geodesic]]:
    """(disk, disk index, arc sweep, line arriving at it) for every junction after a segment."""
    plane, pieces = chain.plane, chain.pieces
    size = len(pieces)
    out = []
    for index, piece in enumerate(pieces):
        if not isinstance(piece, Segment):
            continue
        line = _segment_line(plane, piece)
        following = pieces[(index + 1) % size]
        if isinstance(following, Arc):
            out.append((chain.disks[following.disk_index], following.disk_index, following.sweep, line))
        else:
            out.append((Disk(piece.end, 0.0), None, np.inf, line))
    return out


def _generators(chain: BoundaryChain) -> Tuple[List[Geodesic], List[Ear]]:
    """
    Segment lines in chain order and, between consecutive lines, the disk whose arc joins them.

    A disk that only touches the boundary (its arc pokes out of the tangent line of its two
    neighbours by at most TOUCH_DEPTH) is no generator: its two segments become that one line.
    """
    plane = chain.plane
    junctions = _junctions(chain)
    dropped = True
    while dropped and len(junctions) > 2:
        dropped = False
        for j, (disk, _, sweep, _) in enumerate(junctions):
            if sweep > FLAT_JUNCTION_SWEEP:
                continue
            after = (j + 1) % len(junctions)
            try:
                tangent = kernel.directed_tangent(plane, junctions[j - 1][0], junctions[after][0])
            except GeometryException:
                continue
            if disk.radius - float(kernel.point_geodesic_distance(plane, disk.center, tangent.line)) > TOUCH_DEPTH:
                continue
            junctions[after] = junctions[after][:3] + (tangent.line,)
            del junctions[j]
            dropped = True
            break
    lines = [line for _, _, _, line in junctions]
    ears = [Ear(disk.center, disk.radius, index) for disk, index, _, _ in junctions]
    return lines, ears


def equidistant_center(plane: Plane, a: Geodesic, b: Geodesic, c: Geodesic) -> Optional[Point]:
    """
    The point at equal signed distance from three geodesics, on the positive side of ``b``.

    Equal distances mean equal pairings <n, x>, so x spans the kernel of two linear forms.
    """
    diag = np.array([1.0, 1.0, -1.0]) if plane.is_hyperbolic else np.ones(3)
    m1 = diag * (np.asarray(a.normal, float) - np.asarray(b.normal, float))
    m2 = diag * (np.asarray(b.normal, float) - np.asarray(c.normal, float))
    x = np.cross(m1, m2)
    scale = float(np.linalg.norm(x))
    if scale < 1e-14:
        return None
    x = x / scale
    if plane.is_euclidean:
        if abs(x[2]) < 1e-12:
            return None
        return x / x[2]
    if plane.is_hyperbolic:
        q = float(kernel.form(plane, x, x))
        if q >= -1e-14:
            return None
        x = x if x[2] > 0 else -x
        return x / (plane.k * np.sqrt(-q))
    x = x / plane.k
    if float(kernel.linear_functional(plane, b.normal, x)) < 0.0:
        x = -x
    return x


def central_tree(config: Configuration, chain: Optional[BoundaryChain] = None) -> GeodesicTree:
    """
    Method Name :   central_tree
    Description :   builds the central set of the hull from the chain's tangent segments: each
                    vertex is the center of an inscribed disk touching three segment lines, each
                    hull arc contributes its own disk as a vertex

    Output      :   GeodesicTree whose vertices carry (center, inscribed radius, disk index or None)
    On Failure  :   DomainError for a degenerate chain, TreeStructureError when the assembled
                    graph fails the tree certificate
    """
    plane = config.plane
    chain = hull_boundary(config) if chain is None else chain
    if chain.is_single_circle:
        arc = chain.pieces[0]
        disk = chain.disks[arc.disk_index]
        return single_vertex_tree(plane, disk.center, disk.radius, arc.disk_index)
    lines, ears = _generators(chain)
    if len(lines) < 2:
        raise DomainError(f"hull chain with {len(lines)} segments has no central set")

    def apex(first: int, middle: int, last: int):
        x = equidistant_center(plane, lines[first], lines[middle], lines[last])
        if x is None:
            return None
        tau = float(kernel.point_geodesic_distance(plane, x, lines[middle]))
        if tau < -EPS_GEO:
            # wrong side of the middle line: only taken when no other apex exists
            return x, 0.0, tau - 1.0
        return x, max(tau, 0.0), signed_depth(chain, x) - tau

    tree = label_vertices(dual_tree(plane, ears, apex), config.disks)
    logging.debug(f"central tree: {len(tree.vertices)} vertices, {len(tree.edges)} edges")
    return tree


# ------------------------------------------------------------
# SHARPENING
# ------------------------------------------------------------

def _line_gradient(plane: Plane, p: Point, line: Geodesic) -> NDArray:
    if plane.is_euclidean:
        return np.array([line.normal[0], line.normal[1], 0.0])
    return kernel.project_to_tangent(plane, p, line.normal)


def _active_direction(chain: BoundaryChain, p: Point) -> Optional[NDArray]:
    """Unit direction at p in which the smallest depth term grows at unit rate; None at an arc center."""
    plane = chain.plane
    best_value, best_direction = np.inf, None
    for piece in chain.pieces:
        if isinstance(piece, Segment):
            line = _segment_line(plane, piece)
            value = float(kernel.point_geodesic_distance(plane, p, line))
            if value < best_value:
                best_value, best_direction = value, _line_gradient(plane, p, line)
            continue
        disk = chain.disks[piece.disk_index]
        gap = float(kernel.distance(plane, p, disk.center))
        toward = kernel.log_map(plane, p, disk.center)
        if gap <= EPS_GEO:
            if disk.radius < best_value:
                best_value, best_direction = disk.radius, None
            continue
        angle = float(kernel.direction_angle(plane, disk.center, kernel.log_map(plane, disk.center, p)))
        if angle_in_arc(angle, piece) and disk.radius - gap < best_value:
            best_value, best_direction = disk.radius - gap, toward
        if chain.is_single_circle:
            continue
        for end in (piece.start_angle, piece.end_angle):
            line, _ = kernel.tangent_line_at(plane, disk, end)
            value = float(kernel.point_geodesic_distance(plane, p, line))
            if value < best_value:
                best_value, best_direction = value, _line_gradient(plane, p, line)
    if best_direction is None:
        return None
    size = float(kernel.tangent_norm(plane, best_direction))
    return best_direction / size if size > 1e-300 else None


def _maximal_disk_from(chain: BoundaryChain, p: Point) -> Disk:
    """Largest inscribed disk containing B(p, depth(p)), reached by walking along the active gradient."""
    plane = chain.plane
    base = signed_depth(chain, p)
    direction = _active_direction(chain, p)
    if direction is None:
        return Disk(p, max(base, 0.0))
    tol = EPS_GEO / 10.0

    def loss(t: float) -> float:
        x = kernel.exp_map(plane, p, t * direction)
        return signed_depth(chain, x) - base - t + tol

    limit = np.pi / (2.0 * plane.k) if plane.is_spherical else np.inf
    upper = min(max(base, 1e-3), limit)
    while loss(upper) >= 0.0 and upper < limit:
        upper = min(2.0 * upper, limit)
        if upper > 1e6:
            break
    t = upper if loss(upper) >= 0.0 else brentq(loss, 0.0, upper, xtol=1e-14)
    if t <= EPS_GEO:
        return Disk(p, max(base, 0.0))
    x = kernel.exp_map(plane, p, t * direction)
    return Disk(x, max(signed_depth(chain, x), 0.0))


def _dedupe(plane: Plane, disks: Sequence[Disk]) -> List[Disk]:
    out: List[Disk] = []
    for disk in disks:
        if any(float(kernel.distance(plane, disk.center, kept.center)) <= TREE_VERTEX_TOL
               and abs(disk.radius - kept.radius) <= TREE_VERTEX_TOL for kept in out):
            continue
        out.append(disk)
    return out


def sharpen(config: Configuration) -> Configuration:
    """
    Method Name :   sharpen
    Description :   replaces every disk by a maximal inscribed disk of the same hull that contains
                    it (radius gain at least the center displacement) and appends the disks of the
                    central tree's vertices

    Output      :   Configuration with the same hull; disk i of the output replaces input disk i
    On Failure  :   kernel errors only
    """
    plane = config.plane
    chain = hull_boundary(config)
    tree = central_tree(config, chain)
    disks = [_maximal_disk_from(chain, disk.center) for disk in config.disks]
    disks.extend(Disk(v.point, v.radius) for v in tree.vertices)
    out = _dedupe(plane, disks)
    logging.debug(f"sharpened {len(config)} disks into {len(out)}")
    return Configuration(plane, out)


# ------------------------------------------------------------
# INDUCTIVE DECOMPOSITION
# ------------------------------------------------------------

def _two_disk_hull_indicator(plane: Plane, d1: Disk, d2: Disk, points: NDArray, band: float) -> Tuple[NDArray, NDArray]:
    """
    Membership in D1, D2 or the quadrilateral of tangent feet, computed without the hull code.

    Returns (inside, ambiguous) where ambiguous marks points within ``band`` of a boundary.
    """
    g1 = kernel.distance(plane, points, d1.center) - d1.radius
    g2 = kernel.distance(plane, points, d2.center) - d2.radius
    inside = (g1 <= 0.0) | (g2 <= 0.0)
    ambiguous = (np.abs(g1) < band) | (np.abs(g2) < band)
    d = float(kernel.distance(plane, d1.center, d2.center))
    if d <= abs(d1.radius - d2.radius) + EPS_GEO:
        return inside, ambiguous
    forward, backward = kernel.outer_common_tangents(plane, d1, d2)
    corners = [forward.foot1, forward.foot2, backward.foot2, backward.foot1]
    sides = []
    for a, b in zip(corners, corners[1:] + corners[:1]):
        if float(kernel.distance(plane, a, b)) <= EPS_GEO:
            continue
        sides.append(kernel.point_geodesic_distance(plane, points, kernel.geodesic_through(plane, a, b)))
    if len(sides) >= 3:
        quad = np.min(np.column_stack(sides), axis=1)
        inside |= quad >= 0.0
        ambiguous |= np.abs(quad) < band
    return inside, ambiguous


def tree_decomposition_check(config: Configuration, seed: int = DEFAULT_SEED,
                             samples: int = INDUCTION_INDICATOR_SAMPLES) -> DecompositionReport:
    """
    Method Name :   tree_decomposition_check
    Description :   splits a sharpened system at a leaf k of its central tree (lowest disk index
                    among leaves) with neighbor k-1 into X = all but k and Y = {k-1, k}, then
                    certifies by indicator sampling that U = U_X u U_Y, U_X n U_Y = D_{k-1},
                    U_Y = conv(D_{k-1} u D_k), and checks the perimeter identity

    Output      :   DecompositionReport
    On Failure  :   TreeStructureError when the tree has no leaf or a tree vertex is not a disk center
    """
    plane = config.plane
    chain = hull_boundary(config)
    tree = subdivide(central_tree(config, chain), config.disks)
    if len(tree.vertices) < 2:
        raise TreeStructureError("central tree has a single vertex and no leaf")
    index_of = [vertex.disk_index for vertex in tree.vertices]
    if any(index is None for index in index_of):
        raise TreeStructureError("central tree vertex is not a disk center; sharpen the system first")
    adjacency = tree.adjacency()
    leaf = min(tree.leaves(), key=lambda v: index_of[v])
    neighbor = next(iter(adjacency[leaf]))
    k, prev = index_of[leaf], index_of[neighbor]
    rest = [i for i in range(len(config)) if i != k]
    x_config = config.subset(rest)
    y_config = config.subset([prev, k])
    chain_x, chain_y = hull_boundary(x_config), hull_boundary(y_config)
    joint = config.disks[prev]

    centers = config.centers
    anchor = centers[0]
    cover = float(np.max(kernel.distance(plane, anchor, centers) + config.radii)) + 1e-3
    if plane.is_spherical:
        cover = min(cover, np.pi / plane.k - 1e-9)
    rng = np.random.Generator(np.random.Philox(seed))
    points = kernel.sample_ball(plane, anchor, cover, samples, rng)

    depth_u = np.array([signed_depth(chain, x) for x in points])
    depth_x = np.array([signed_depth(chain_x, x) for x in points])
    depth_y = np.array([signed_depth(chain_y, x) for x in points])
    gap_joint = kernel.distance(plane, points, joint.center) - joint.radius
    in_quad, quad_band = _two_disk_hull_indicator(plane, joint, config.disks[k], points, INDICATOR_BAND)
    band = ((np.abs(depth_u) < INDICATOR_BAND) | (np.abs(depth_x) < INDICATOR_BAND)
            | (np.abs(depth_y) < INDICATOR_BAND) | (np.abs(gap_joint) < INDICATOR_BAND) | quad_band)
    keep = ~band
    in_u, in_x, in_y = depth_u >= 0.0, depth_x >= 0.0, depth_y >= 0.0
    union_bad = int(np.sum(keep & (in_u != (in_x | in_y))))
    meet_bad = int(np.sum(keep & ((in_x & in_y) != (gap_joint <= 0.0))))
    hull_y_bad = int(np.sum(keep & (in_y != in_quad)))

    per_u = hull_perimeter(chain)
    per_x = hull_perimeter(chain_x)
    per_y = hull_perimeter(chain_y)
    per_joint = kernel.circle_perimeter(plane, joint.radius)
    residual = abs(per_u - (per_x + per_y - per_joint))
    passed = (union_bad == 0 and meet_bad == 0 and hull_y_bad == 0
              and residual <= INDUCTION_PERIMETER_TOLERANCE * (1.0 + per_u))
    logging.info(f"decomposition at leaf {k} (neighbor {prev}): mismatches "
                 f"{union_bad}/{meet_bad}/{hull_y_bad}, perimeter residual {residual:.3e}")
    return DecompositionReport(leaf_index=k, neighbor_index=prev, samples=int(np.sum(keep)),
                               union_mismatches=union_bad, intersection_mismatches=meet_bad,
                               hull_y_mismatches=hull_y_bad, perimeter_union=per_u, perimeter_x=per_x,
                               perimeter_y=per_y, perimeter_intersection=per_joint,
                               perimeter_residual=float(residual), passed=bool(passed))
