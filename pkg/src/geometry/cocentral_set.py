"""
Minimal covering disks of a disk intersection U, spindles, and the co-central tree of U.

The co-central tree is certified twice: by construction (every vertex disk covers U and
touches it at three or more points) and through duality. Lifting the plane conformally
to the unit sphere, replacing every cap by the closure of its complement and projecting
from an interior point of U turns covering disks of U into inscribed disks of a planar
union of disks, so the co-central tree must reappear as that union's central set.
"""
from typing import List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import brentq, minimize_scalar

from src.constants import (BISECTOR_SCAN_SAMPLES, COVERAGE_SAMPLES_PER_ARC,
                           DEFAULT_SEED, EPS_GEO, HYPERCONVEXITY_PAIRS,
                           HYPERCONVEXITY_TOL, INDUCTION_RELATIVE_TOLERANCE,
                           POLE_PROXIMITY_TOL, SPINDLE_BOUNDARY_POINTS,
                           TOUCH_DEPTH, TREE_VERTEX_TOL)
from src.entity.geometry_entity import Configuration, Disk, Plane, Point
from src.entity.shape_entity import (Arc, AreaDecompositionReport, CoveringDisk,
                                     DualityReport, GeodesicTree,
                                     HyperconvexityReport, IntersectionRegion,
                                     Spindle)
from src.exception import (DegenerateGeodesicError, DomainError,
                           PoleProximityError, SpindleUndefinedError,
                           TreeStructureError)
from src.geometry import kernel
from src.geometry.disk_hull import angle_in_arc, piece_end, sample_chain
from src.geometry.disk_intersection import (intersect_disks, lens_area,
                                            region_area)
from src.geometry.kernel import TWO_PI
from src.geometry.skeleton import (Ear, dual_tree, label_vertices,
                                   single_vertex_tree, subdivide)
from src.logger import logging

CONTACT_TOL = 1e-6
DUALITY_TOL = 1e-6


# ------------------------------------------------------------
# SPINDLES
# ------------------------------------------------------------

def spindle(plane: Plane, p: Point, q: Point, rho: float) -> Spindle:
    """
    Intersection of all radius-rho disks containing p and q.

    Bounded by two radius-rho arcs whose centers sit on the bisector of [p, q] at height h
    above the midpoint, h solving the right triangle (h, d/2, rho).
    """
    p = kernel.validate_point(plane, p)
    q = kernel.validate_point(plane, q)
    d = float(kernel.distance(plane, p, q))
    if d > 2.0 * rho + EPS_GEO:
        raise SpindleUndefinedError(f"points {d:.6g} apart exceed the spindle diameter {2.0 * rho:.6g}")
    if d <= EPS_GEO:
        return Spindle(plane, p, q, rho, ())
    middle = kernel.geodesic_point(plane, p, q, 0.5)
    if d >= 2.0 * rho - EPS_GEO:
        return Spindle(plane, p, q, rho, (middle,))
    k, half = plane.k, d / 2.0
    if plane.is_hyperbolic:
        h = np.arccosh(max(np.cosh(k * rho) / np.cosh(k * half), 1.0)) / k
    elif plane.is_spherical:
        h = np.arccos(np.clip(np.cos(k * rho) / np.cos(k * half), -1.0, 1.0)) / k
    else:
        h = np.sqrt(max(rho * rho - half * half, 0.0))
    along = kernel.log_map(plane, middle, q)
    across = kernel.rotate90(plane, middle, along / kernel.tangent_norm(plane, along))
    centers = (kernel.exp_map(plane, middle, h * across), kernel.exp_map(plane, middle, -h * across))
    return Spindle(plane, p, q, rho, centers)


def spindle_contains(s: Spindle, x: Point, tol: float = EPS_GEO) -> bool:
    if s.is_point:
        return bool(kernel.distance(s.plane, x, s.p) <= tol)
    return all(float(kernel.distance(s.plane, x, c)) <= s.rho + tol for c in s.arc_centers)


def spindle_boundary(s: Spindle, count: int) -> NDArray:
    """About ``count`` points on the boundary of the spindle."""
    if s.is_point:
        return np.atleast_2d(s.p)
    region = intersect_disks(Configuration(s.plane, [Disk(c, s.rho) for c in s.arc_centers]))
    return sample_chain(region.chain, count)


# ------------------------------------------------------------
# COVERING
# ------------------------------------------------------------

def _require_region(region: IntersectionRegion) -> None:
    if region.empty_flag or (not region.chain.pieces and not region.vertices):
        raise DomainError("the intersection is empty")


def farthest_point(region: IntersectionRegion, x: Point) -> Tuple[Point, float]:
    """Point of U farthest from x: a corner of U or the far point of one of its arcs."""
    _require_region(region)
    plane = region.plane
    if not region.chain.pieces:
        point = region.vertices[0]
        return point, float(kernel.distance(plane, x, point))
    candidates = [(float(kernel.distance(plane, x, q)), q) for q in region.vertices]
    for arc in region.chain.arcs:
        disk = region.disks[arc.disk_index]
        gap = float(kernel.distance(plane, x, disk.center))
        if gap <= EPS_GEO:
            point = kernel.point_on_circle(plane, disk, arc.start_angle)
            candidates.append((float(kernel.distance(plane, x, point)), point))
            continue
        away = float(kernel.direction_angle(plane, disk.center, -kernel.log_map(plane, disk.center, x)))
        if angle_in_arc(away, arc):
            point = kernel.point_on_circle(plane, disk, away)
            candidates.append((float(kernel.distance(plane, x, point)), point))
    value, point = max(candidates, key=lambda c: c[0])
    return point, value


def covering_radius(region: IntersectionRegion, x: Point) -> float:
    """Radius of the smallest disk centered at x containing U."""
    return farthest_point(region, x)[1]


def boundary_samples(region: IntersectionRegion) -> NDArray:
    """Corners of U plus COVERAGE_SAMPLES_PER_ARC points on every arc."""
    _require_region(region)
    plane = region.plane
    points = [np.atleast_2d(q) for q in region.vertices]
    t = np.arange(COVERAGE_SAMPLES_PER_ARC) / COVERAGE_SAMPLES_PER_ARC
    for arc in region.chain.arcs:
        disk = region.disks[arc.disk_index]
        points.append(np.atleast_2d(kernel.point_on_circle(plane, disk, arc.start_angle + t * arc.sweep)))
    return np.vstack(points)


def covers_region(region: IntersectionRegion, disk: Disk, tol: float = EPS_GEO) -> bool:
    """Sampled coverage test; convexity makes boundary coverage imply coverage of U."""
    samples = boundary_samples(region)
    return bool(np.all(kernel.distance(region.plane, samples, disk.center) <= disk.radius + tol))


def contact_points(region: IntersectionRegion, disk: Disk, tol: float = CONTACT_TOL) -> Tuple[Point, ...]:
    """Corners of U on the circle of ``disk``, plus the touching point of each arc that meets it."""
    plane = region.plane
    contacts: List[Point] = [q for q in region.vertices
                             if abs(float(kernel.distance(plane, disk.center, q)) - disk.radius) <= tol]
    for arc in region.chain.arcs:
        own = region.disks[arc.disk_index]
        gap = float(kernel.distance(plane, disk.center, own.center))
        if gap <= EPS_GEO and abs(own.radius - disk.radius) <= tol:
            contacts.append(kernel.point_on_circle(plane, own, arc.start_angle + arc.sweep / 2.0))
            continue
        if gap <= EPS_GEO:
            continue
        away = float(kernel.direction_angle(plane, own.center, -kernel.log_map(plane, own.center, disk.center)))
        if not angle_in_arc(away, arc):
            continue
        point = kernel.point_on_circle(plane, own, away)
        if abs(float(kernel.distance(plane, disk.center, point)) - disk.radius) > tol:
            continue
        if all(float(kernel.distance(plane, point, c)) > tol for c in contacts):
            contacts.append(point)
    return tuple(contacts)


def min_covering_disk_on_bisector(region: IntersectionRegion, q_i: Point,
                                  q_j: Point) -> Optional[Tuple[CoveringDisk, CoveringDisk]]:
    """
    Method Name :   min_covering_disk_on_bisector
    Description :   scans the bisector of [q_i, q_j] for centers whose circle through q_i and q_j
                    covers U; the feasible centers form a segment whose ends are refined by brentq

    Output      :   (covering disk at one end, covering disk at the other end), both equal when
                    the segment is a point; None when no such center exists
    On Failure  :   DegenerateGeodesicError when q_i == q_j
    """
    _require_region(region)
    plane = region.plane
    middle = kernel.geodesic_point(plane, q_i, q_j, 0.5)
    along = kernel.log_map(plane, middle, q_j)
    across = kernel.rotate90(plane, middle, along / kernel.tangent_norm(plane, along))
    reach = max(d.radius for d in region.disks) + 1e-6
    if plane.is_spherical:
        reach = min(reach, np.pi / (2.0 * plane.k))
    tol = EPS_GEO

    def center(s: float) -> Point:
        return kernel.exp_map(plane, middle, s * across)

    def slack(s: float) -> float:
        c = center(s)
        return covering_radius(region, c) - float(kernel.distance(plane, c, q_i)) - tol

    grid = np.linspace(-reach, reach, BISECTOR_SCAN_SAMPLES)
    values = np.array([slack(s) for s in grid])
    feasible = np.flatnonzero(values <= 0.0)
    if feasible.size == 0:
        best = minimize_scalar(slack, bounds=(-reach, reach), method="bounded", options={"xatol": 1e-12})
        if best.fun > 0.0:
            return None
        ends = (float(best.x), float(best.x))
    else:
        first, last = int(feasible[0]), int(feasible[-1])
        lo = grid[first] if first == 0 else brentq(slack, grid[first - 1], grid[first], xtol=1e-14)
        hi = grid[last] if last == len(grid) - 1 else brentq(slack, grid[last], grid[last + 1], xtol=1e-14)
        ends = (float(lo), float(hi))
    out = []
    for s in ends:
        c = center(s)
        disk = Disk(c, float(kernel.distance(plane, c, q_i)))
        out.append(CoveringDisk(disk, contact_points(region, disk)))
    return out[0], out[1]


# ------------------------------------------------------------
# CO-CENTRAL TREE
# ------------------------------------------------------------

def circumcenter(plane: Plane, a: Point, b: Point, c: Point) -> Optional[Point]:
    """Center of the circle through three points, None when the plane has no such circle."""
    if plane.is_euclidean:
        try:
            center, _ = kernel.circumcircle_2d(a, b, c)
        except DegenerateGeodesicError:
            return None
        return np.array([center[0], center[1], 1.0])
    diag = np.array([1.0, 1.0, -1.0]) if plane.is_hyperbolic else np.ones(3)
    x = np.cross(diag * (np.asarray(a) - np.asarray(b)), diag * (np.asarray(b) - np.asarray(c)))
    scale = float(np.linalg.norm(x))
    if scale < 1e-14:
        return None
    x = x / scale
    if plane.is_hyperbolic:
        q = float(kernel.form(plane, x, x))
        if q >= -1e-14:
            return None
        x = x if x[2] > 0 else -x
        return x / (plane.k * np.sqrt(-q))
    x = x / plane.k
    return x if float(np.dot(x, b)) >= 0.0 else -x


def _corner_of(plane: Plane, before: Disk, after: Disk, near: Point) -> Optional[Point]:
    """Meeting point of the circles of two disks closest to ``near``."""
    overlap = kernel.circle_overlap_interval(plane, before, after)
    if overlap is None:
        return None
    theta, half = overlap
    points = [kernel.point_on_circle(plane, before, theta + sign * half) for sign in (1.0, -1.0)]
    return min(points, key=lambda q: float(kernel.distance(plane, q, near)))


def _significant_arcs(region: IntersectionRegion) -> Tuple[List[Arc], List[Point]]:
    """
    The arcs of U with the corner ending each one.

    A disk whose circle only grazes a corner of the others (the corner lies within TOUCH_DEPTH
    of it) leaves a sliver arc there; the sliver is dropped and the corner recomputed from the
    two circles around it.
    """
    plane, chain = region.plane, region.chain
    arcs = list(chain.arcs)
    corners = [piece_end(chain, arc) for arc in arcs]
    dropped = True
    while dropped and len(arcs) > 2:
        dropped = False
        for t, arc in enumerate(arcs):
            before, after = arcs[t - 1], arcs[(t + 1) % len(arcs)]
            if before.disk_index == after.disk_index:
                continue
            disk = region.disks[arc.disk_index]
            middle = kernel.point_on_circle(plane, disk, arc.start_angle + arc.sweep / 2.0)
            corner = _corner_of(plane, region.disks[before.disk_index], region.disks[after.disk_index], middle)
            if corner is None or float(kernel.distance(plane, disk.center, corner)) - disk.radius > TOUCH_DEPTH:
                continue
            corners[t - 1] = corner
            del arcs[t]
            del corners[t]
            dropped = True
            break
    return arcs, corners


def _corners_and_ears(region: IntersectionRegion) -> Tuple[List[Point], List[Ear]]:
    arcs, corners = _significant_arcs(region)
    m = len(arcs)
    ears = []
    for s in range(m):
        nxt = arcs[(s + 1) % m]
        disk = region.disks[nxt.disk_index]
        ears.append(Ear(disk.center, disk.radius, nxt.disk_index))
    return corners, ears


def cocentral_tree(region: IntersectionRegion) -> GeodesicTree:
    """
    Method Name :   cocentral_tree
    Description :   builds the co-central set of U from its corners q_1..q_m: each vertex is the
                    center of a covering disk through three corners, each arc contributes its own
                    disk; every edge is then certified to carry covering disks touching U twice

    Output      :   GeodesicTree of minimal covering disks (center, radius, disk index or None)
    On Failure  :   DomainError for an empty region or one without interior,
                    TreeStructureError when a certificate fails
    """
    _require_region(region)
    plane = region.plane
    if not region.chain.pieces:
        raise DomainError("the intersection has no interior")
    if region.full_disk_flag:
        disk = region.disks[region.full_disk_index]
        return single_vertex_tree(plane, disk.center, disk.radius, region.full_disk_index)
    corners, ears = _corners_and_ears(region)

    def apex(first: int, middle: int, last: int):
        x = circumcenter(plane, corners[first], corners[middle], corners[last])
        if x is None:
            return None
        radius = float(kernel.distance(plane, x, corners[middle]))
        return x, radius, radius - covering_radius(region, x)

    tree = label_vertices(dual_tree(plane, ears, apex), region.disks)
    for a, b in tree.edges:
        middle = kernel.geodesic_point(plane, tree.vertices[a].point, tree.vertices[b].point, 0.5) \
            if float(kernel.distance(plane, tree.vertices[a].point, tree.vertices[b].point)) > EPS_GEO \
            else tree.vertices[a].point
        cover = Disk(middle, covering_radius(region, middle))
        if len(contact_points(region, cover)) < 2:
            raise TreeStructureError(f"edge ({a}, {b}) carries covering disks touching U only once")
    logging.debug(f"co-central tree: {len(tree.vertices)} vertices, {len(tree.edges)} edges")
    return tree


# ------------------------------------------------------------
# SHARPENING AND DECOMPOSITION
# ------------------------------------------------------------

def _minimal_disk_from(region: IntersectionRegion, p: Point) -> Disk:
    """Smallest covering disk inside B(p, R(p)), reached by walking toward the farthest point of U."""
    plane = region.plane
    far, base = farthest_point(region, p)
    toward = kernel.log_map(plane, p, far)
    length = float(kernel.tangent_norm(plane, toward))
    if length <= 1e-300:
        return Disk(p, base)
    direction = toward / length
    tol = EPS_GEO / 10.0

    def gain(t: float) -> float:
        return covering_radius(region, kernel.exp_map(plane, p, t * direction)) - base + t - tol

    upper = min(base, np.pi / (2.0 * plane.k)) if plane.is_spherical else base
    t = upper if gain(upper) <= 0.0 else brentq(gain, 0.0, upper, xtol=1e-14)
    if t <= EPS_GEO:
        return Disk(p, base)
    x = kernel.exp_map(plane, p, t * direction)
    return Disk(x, covering_radius(region, x))


def cocentral_sharpen(config: Configuration) -> Configuration:
    """
    Method Name :   cocentral_sharpen
    Description :   replaces every disk by a minimal covering disk of U = n D_i contained in it
                    (radius loss at least the center displacement) and appends the disks of the
                    co-central tree's vertices

    Output      :   Configuration with the same intersection; disk i of the output replaces input disk i
    On Failure  :   DomainError when U is empty or has no interior
    """
    plane = config.plane
    region = intersect_disks(config)
    if region.empty_flag or not region.chain.pieces:
        raise DomainError("co-central sharpening needs an intersection with interior")
    tree = cocentral_tree(region)
    disks = [_minimal_disk_from(region, disk.center) for disk in config.disks]
    disks.extend(Disk(v.point, v.radius) for v in tree.vertices)
    out: List[Disk] = []
    for disk in disks:
        if any(float(kernel.distance(plane, disk.center, kept.center)) <= TREE_VERTEX_TOL
               and abs(disk.radius - kept.radius) <= TREE_VERTEX_TOL for kept in out):
            continue
        out.append(disk)
    logging.debug(f"co-central sharpening: {len(config)} disks into {len(out)}")
    return Configuration(plane, out)


def intersection_decomposition_check(config: Configuration) -> AreaDecompositionReport:
    """
    Method Name :   intersection_decomposition_check
    Description :   for a sharpened system, removes the leaf k of the co-central tree (lowest disk
                    index) with neighbor k-1 and checks area(U) = area(U_{k-1}) - area(D_{k-1} minus D_k)

    Output      :   AreaDecompositionReport
    On Failure  :   TreeStructureError when the tree has no leaf or a vertex is not a disk center
    """
    plane = config.plane
    region = intersect_disks(config)
    tree = subdivide(cocentral_tree(region), config.disks)
    if len(tree.vertices) < 2:
        raise TreeStructureError("co-central tree has a single vertex and no leaf")
    index_of = [vertex.disk_index for vertex in tree.vertices]
    if any(index is None for index in index_of):
        raise TreeStructureError("co-central tree vertex is not a disk center; sharpen the system first")
    leaf = min(tree.leaves(), key=lambda v: index_of[v])
    neighbor = next(iter(tree.adjacency()[leaf]))
    k, prev = index_of[leaf], index_of[neighbor]
    rest = intersect_disks(config.subset([i for i in range(len(config)) if i != k]))
    joint, leaf_disk = config.disks[prev], config.disks[k]
    area_u, area_rest = region_area(region), region_area(rest)
    difference = kernel.circle_area(plane, joint.radius) - lens_area(plane, joint, leaf_disk)
    residual = abs(area_u - (area_rest - difference))
    passed = residual <= INDUCTION_RELATIVE_TOLERANCE * (1.0 + area_rest)
    logging.info(f"intersection decomposition at leaf {k} (neighbor {prev}): residual {residual:.3e}")
    return AreaDecompositionReport(leaf_index=k, neighbor_index=prev, area_region=area_u,
                                   area_without_leaf=area_rest, area_difference=float(difference),
                                   residual=float(residual), passed=bool(passed))


# ------------------------------------------------------------
# HYPERCONVEXITY
# ------------------------------------------------------------

def _point_between(plane: Plane, a: Point, b: Point, t: float) -> Point:
    if float(kernel.distance(plane, a, b)) <= EPS_GEO:
        return a
    return kernel.geodesic_point(plane, a, b, t)


def hyperconvexity_check(region: IntersectionRegion, rho: Optional[float] = None,
                         rng: Optional[np.random.Generator] = None, pairs: int = HYPERCONVEXITY_PAIRS,
                         boundary_points: int = SPINDLE_BOUNDARY_POINTS) -> HyperconvexityReport:
    """
    Method Name :   hyperconvexity_check
    Description :   draws point pairs of U (on chords between boundary samples) and checks that the
                    boundary of each pair's rho-spindle stays in U; rho defaults to the largest radius

    Output      :   HyperconvexityReport with the largest excess max_i d(x, p_i) - r_i over all
                    spindle boundary points
    On Failure  :   DomainError for an empty region, SpindleUndefinedError when rho is below
                    half the diameter of U
    """
    _require_region(region)
    plane = region.plane
    rho = max(d.radius for d in region.disks) if rho is None else rho
    rng = np.random.default_rng(DEFAULT_SEED) if rng is None else rng
    samples = boundary_samples(region)
    centers = np.array([d.center for d in region.disks])
    radii = np.array([d.radius for d in region.disks])
    worst = -np.inf
    for _ in range(pairs):
        a, b, c, d = samples[rng.integers(len(samples), size=4)]
        p = _point_between(plane, a, b, float(rng.random()))
        q = _point_between(plane, c, d, float(rng.random()))
        outline = spindle_boundary(spindle(plane, p, q, rho), boundary_points)
        excess = kernel.distance(plane, outline[:, None, :], centers[None, :, :]) - radii
        worst = max(worst, float(np.max(excess)))
    logging.info(f"rho-hyperconvexity at rho={rho:.6g}: worst excess {worst:.3e} over {pairs} spindles")
    return HyperconvexityReport(rho=float(rho), pairs=pairs, boundary_points=boundary_points,
                                worst_excess=worst, passed=worst <= HYPERCONVEXITY_TOL)


# ------------------------------------------------------------
# DUALITY
# ------------------------------------------------------------

def lift_to_sphere(plane: Plane, x: Point) -> NDArray:
    """Conformal embedding into the unit sphere (through the Poincare disk for H^2)."""
    unit_sphere = Plane.spherical(1.0)
    north = np.array([0.0, 0.0, 1.0])
    x = np.asarray(x, float)
    if plane.is_spherical:
        return plane.k * x
    chart = kernel.to_poincare(plane, x) if plane.is_hyperbolic else x[..., :2]
    return kernel.stereographic_lift(unit_sphere, north, chart)


def _dual_circle(plane: Plane, disk: Disk, pole: NDArray) -> Tuple[NDArray, float]:
    center, radius = kernel.disk_to_cap(plane, disk)
    return kernel.cap_to_chart_circle(-center, np.pi - radius, pole)


def _ccw_range(start: float, end: float, midpoint: float) -> Tuple[float, float]:
    sweep = float(np.mod(end - start, TWO_PI))
    if float(np.mod(midpoint - start, TWO_PI)) <= sweep:
        return start, sweep
    return end, TWO_PI - sweep


def duality_check(region: IntersectionRegion, config: Configuration) -> DualityReport:
    """
    Method Name :   duality_check
    Description :   maps U's corners and disks to the plane through the sphere (complementing
                    every cap, projecting from the lifted witness of U), builds the central set
                    of the resulting union of disks with the same tree builder, and matches it
                    vertex by vertex and edge by edge with the co-central tree

    Output      :   DualityReport
    On Failure  :   PoleProximityError when the witness is too close to the boundary of U
    """
    plane = config.plane
    tree = cocentral_tree(region)
    witness = region.witness
    depth = min(d.radius - float(kernel.distance(plane, witness, d.center)) for d in region.disks)
    if depth < POLE_PROXIMITY_TOL:
        raise PoleProximityError(f"witness lies {depth:.3e} from the boundary of U")
    unit_sphere = Plane.spherical(1.0)
    pole = lift_to_sphere(plane, witness)

    def to_chart(points) -> NDArray:
        return kernel.stereographic_project(unit_sphere, pole, lift_to_sphere(plane, points))

    flat = Plane.euclidean()
    images = []
    for vertex in tree.vertices:
        center, radius = _dual_circle(plane, Disk(vertex.point, vertex.radius), pole)
        images.append(center)

    if region.full_disk_flag:
        dual = single_vertex_tree(flat, np.append(images[0], 1.0), 0.0, region.full_disk_index)
    else:
        arcs, ends = _significant_arcs(region)
        corners = to_chart(np.array(ends))
        circles, ranges = [], []
        for s, arc in enumerate(arcs):
            center, radius = _dual_circle(plane, region.disks[arc.disk_index], pole)
            start, end = corners[s - 1], corners[s]
            midpoint = to_chart(kernel.point_on_circle(plane, region.disks[arc.disk_index],
                                                       arc.start_angle + arc.sweep / 2.0))
            angles = [float(np.arctan2(v[1] - center[1], v[0] - center[0])) for v in (start, end, midpoint)]
            circles.append((center, radius))
            ranges.append(_ccw_range(*angles))
        m = len(arcs)
        ears = [Ear(np.append(circles[(s + 1) % m][0], 1.0), circles[(s + 1) % m][1], arcs[(s + 1) % m].disk_index)
                for s in range(m)]

        def boundary_gap(y: NDArray) -> float:
            gaps = []
            for (center, radius), (start, sweep) in zip(circles, ranges):
                offset = y - center
                angle = float(np.arctan2(offset[1], offset[0]))
                if float(np.mod(angle - start, TWO_PI)) <= sweep:
                    gaps.append(abs(radius - float(np.linalg.norm(offset))))
                else:
                    ends = [center + radius * np.array([np.cos(a), np.sin(a)]) for a in (start, start + sweep)]
                    gaps.append(min(float(np.linalg.norm(y - e)) for e in ends))
            return min(gaps)

        def apex(first: int, middle: int, last: int):
            try:
                center, radius = kernel.circumcircle_2d(corners[first], corners[middle], corners[last])
            except DegenerateGeodesicError:
                return None
            return np.append(center, 1.0), radius, boundary_gap(center) - radius

        dual = dual_tree(flat, ears, apex)

    dual_points = np.array([v.point[:2] for v in dual.vertices])
    mapping, worst = [], 0.0
    for image in images:
        gaps = np.linalg.norm(dual_points - image, axis=1)
        nearest = int(np.argmin(gaps))
        scale = 1.0 + float(np.linalg.norm(image))
        worst = max(worst, float(gaps[nearest]) / scale)
        mapping.append(nearest)
    mapped_edges = sorted(tuple(sorted((mapping[a], mapping[b]))) for a, b in tree.edges)
    passed = (len(tree.vertices) == len(dual.vertices) and len(tree.edges) == len(dual.edges)
              and worst <= DUALITY_TOL and mapped_edges == sorted(dual.edges))
    logging.info(f"duality check: {len(tree.vertices)}/{len(dual.vertices)} vertices, "
                 f"{len(tree.edges)}/{len(dual.edges)} edges, worst vertex error {worst:.3e}")
    return DualityReport(vertex_count=len(tree.vertices), dual_vertex_count=len(dual.vertices),
                         edge_count=len(tree.edges), dual_edge_count=len(dual.edges),
                         max_vertex_error=worst, pole=tuple(float(c) for c in pole), passed=bool(passed))
