"""
Convex hull of a finite union of disks as an explicit boundary chain.

The hull boundary is produced by gift-wrapping on directed outer common tangents.
Chains produced here (and by ``disk_intersection``) share the helpers at the bottom
of the module: endpoint checks, perimeter, area and Gauss-Bonnet closure.
"""
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import minimize

from src.constants import (ANGLE_EPS, EPS_GEO, HEMISPHERE_GRID_POINTS,
                           HEMISPHERE_REFINE_ITERATIONS)
from src.entity.geometry_entity import (Configuration, Disk, Geodesic, Plane,
                                        Point, TangentData)
from src.entity.shape_entity import (Arc, BoundaryChain, Piece, Segment,
                                     TwoDiskComparison)
from src.exception import ChainIntegrityError, DomainError, HemisphereError
from src.geometry import kernel
from src.geometry.kernel import TWO_PI
from src.logger import logging

CHAIN_TOL = 1e-7
SUPPORT_TOL = 1e-8
ADVANCE_TIE = 1e-10


# ------------------------------------------------------------
# CONFIGURATION CHECKS
# ------------------------------------------------------------

def fibonacci_sphere(count: int) -> NDArray:
    """Nearly uniform unit vectors on S^2."""
    i = np.arange(count) + 0.5
    z = 1.0 - 2.0 * i / count
    phi = np.pi * (1.0 + 5.0 ** 0.5) * i
    r = np.sqrt(1.0 - z * z)
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def _hemisphere_margins(plane: Plane, poles: NDArray, centers: NDArray, radii: NDArray) -> NDArray:
    heights = np.arcsin(np.clip(poles @ (plane.k * centers).T, -1.0, 1.0)) / plane.k
    return np.min(heights - radii, axis=-1)


def certify_hemisphere(config: Configuration) -> Tuple[Point, float]:
    """
    Method Name :   certify_hemisphere
    Description :   searches for the pole w maximizing min_i (height of p_i over the
                    great circle of w) - r_i, by a Fibonacci grid then Nelder-Mead

    Output      :   (pole as a point of the plane, margin); margin >= 0 means every disk
                    lies in the closed hemisphere around the pole
    On Failure  :   HemisphereError when the best margin is below -eps
    """
    plane = config.plane
    if not plane.is_spherical:
        raise DomainError("hemisphere certificates only apply to spherical configurations")
    centers, radii = config.centers, config.radii
    grid = fibonacci_sphere(HEMISPHERE_GRID_POINTS)
    margins = _hemisphere_margins(plane, grid, centers, radii)
    best = grid[int(np.argmax(margins))]

    def objective(angles: NDArray) -> float:
        theta, phi = angles
        pole = np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
        return -float(_hemisphere_margins(plane, pole[None, :], centers, radii)[0])

    start = np.array([np.arccos(np.clip(best[2], -1.0, 1.0)), np.arctan2(best[1], best[0])])
    result = minimize(objective, start, method="Nelder-Mead",
                      options={"maxiter": HEMISPHERE_REFINE_ITERATIONS, "xatol": 1e-12, "fatol": 1e-14})
    theta, phi = result.x
    pole = np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
    margin = -float(result.fun)
    if margin < float(np.max(margins)):
        pole, margin = best, float(np.max(margins))
    logging.debug(f"hemisphere search: margin={margin:.3e}")
    if margin < -EPS_GEO:
        raise HemisphereError(f"configuration is not contained in a closed hemisphere (margin {margin:.3e})")
    return pole / plane.k, margin


def validate_configuration(config: Configuration) -> Optional[Point]:
    """Checks every center; for spherical input also radii < pi/(2k) and the hemisphere certificate."""
    if len(config) == 0:
        raise DomainError("configuration must contain at least one disk")
    plane = config.plane
    for disk in config.disks:
        kernel.validate_point(plane, disk.center)
    if plane.is_spherical:
        if np.any(config.radii >= np.pi / (2.0 * plane.k)):
            raise HemisphereError("spherical disk radii must stay below pi/(2k)")
        pole, _ = certify_hemisphere(config)
        return pole
    return None


def _contained_in(plane: Plane, a: Disk, b: Disk) -> bool:
    return float(kernel.distance(plane, a.center, b.center)) <= b.radius - a.radius + EPS_GEO


def prune_nested(config: Configuration) -> List[int]:
    """Indices of disks not contained in another disk; among equal disks the lowest index survives."""
    plane, disks = config.plane, config.disks
    keep = []
    for i, disk in enumerate(disks):
        covered = False
        for j, other in enumerate(disks):
            if i == j or not _contained_in(plane, disk, other):
                continue
            if not _contained_in(plane, other, disk) or j < i:
                covered = True
                break
        if not covered:
            keep.append(i)
    return keep


# ------------------------------------------------------------
# HULL BOUNDARY
# ------------------------------------------------------------

def foot_angle(plane: Plane, center: Point, line: Geodesic) -> float:
    """Frame angle at ``center`` of the perpendicular dropped onto ``line`` (outward normal for radius 0)."""
    toward = kernel.project_to_tangent(plane, center, -np.asarray(line.normal, float))
    return float(kernel.direction_angle(plane, center, toward))


def _ccw_advance(start: float, end: float) -> float:
    advance = float(np.mod(end - start, TWO_PI))
    return 0.0 if advance > TWO_PI - 1e-9 else advance


def _supports_all(plane: Plane, disks: Sequence[Disk], indices: Sequence[int], line: Geodesic) -> bool:
    tol = SUPPORT_TOL * (1.0 + max(disks[m].radius for m in indices))
    for m in indices:
        if float(kernel.point_geodesic_distance(plane, disks[m].center, line)) - disks[m].radius < -tol:
            return False
    return True


def _start_disk(config: Configuration, keep: Sequence[int], reference: Point) -> Tuple[int, float]:
    """Disk holding the farthest point of the union from ``reference``, with its outward angle."""
    plane, disks = config.plane, config.disks
    scores = [(float(kernel.distance(plane, reference, disks[i].center)) + disks[i].radius, disks[i].radius, -i)
              for i in keep]
    _, _, neg_index = max(scores)
    index = -neg_index
    center = disks[index].center
    if float(kernel.distance(plane, reference, center)) <= EPS_GEO:
        return index, 0.0
    away = -kernel.log_map(plane, center, reference)
    return index, float(kernel.direction_angle(plane, center, away))


def _next_tangent(plane: Plane, disks: Sequence[Disk], keep: Sequence[int], current: int,
                  phi_in: float, cache: Dict[Tuple[int, int], TangentData]) -> Tuple[int, TangentData, float]:
    candidates = []
    for j in keep:
        if j == current:
            continue
        if (current, j) not in cache:
            cache[(current, j)] = kernel.directed_tangent(plane, disks[current], disks[j])
        tangent = cache[(current, j)]
        phi_out = foot_angle(plane, disks[current].center, tangent.line)
        valid = _supports_all(plane, disks, keep, tangent.line)
        candidates.append((valid, _ccw_advance(phi_in, phi_out), j, tangent, phi_out))
    pool = [c for c in candidates if c[0]]
    if not pool:
        logging.warning(f"no supporting tangent from disk {current}; taking the smallest turn")
        pool = candidates
    smallest = min(c[1] for c in pool)
    ties = [c for c in pool if c[1] <= smallest + ADVANCE_TIE]
    _, _, j, tangent, phi_out = min(ties, key=lambda c: (-disks[c[2]].radius, c[2]))
    return j, tangent, phi_out


def _merge_flat_arcs(pieces: List[Piece]) -> List[Piece]:
    """Drops zero-sweep arcs; the two segments around each one lie on one line and are joined."""
    out = list(pieces)
    while len(out) > 4:
        size = len(out)
        flat = next((i for i, p in enumerate(out)
                     if isinstance(p, Arc) and p.sweep <= ANGLE_EPS
                     and isinstance(out[i - 1], Segment) and isinstance(out[(i + 1) % size], Segment)), None)
        if flat is None:
            break
        rotated = out[flat - 1:] + out[:flat - 1] if flat > 0 else out[-1:] + out[:-1]
        before, after = rotated[0], rotated[2]
        out = [Segment(before.start, after.end, before.line)] + rotated[3:]
    return out


def hull_boundary(config: Configuration) -> BoundaryChain:
    """
    Method Name :   hull_boundary
    Description :   boundary of conv(union of disks) as a CCW chain of arcs and tangent
                    segments, by gift-wrapping from the disk extremal for a reference point

    Output      :   BoundaryChain over config.disks (arc indices refer to the input order)
    On Failure  :   DomainError for empty input, HemisphereError for spherical input outside
                    a hemisphere, ChainIntegrityError when the wrap does not close
    """
    plane, disks = config.plane, list(config.disks)
    pole = validate_configuration(config)
    keep = prune_nested(config)
    if len(keep) == 1:
        return BoundaryChain(plane, disks, [Arc(keep[0], 0.0, TWO_PI)])

    reference = pole if pole is not None else plane.origin
    current, phi_in = _start_disk(config, keep, reference)
    cache: Dict[Tuple[int, int], TangentData] = {}
    steps = []
    for _ in range(2 * len(keep) + 2):
        j, tangent, phi_out = _next_tangent(plane, disks, keep, current, phi_in, cache)
        if steps and (current, j) == (steps[0][0], steps[0][1]):
            break
        phi_next = foot_angle(plane, disks[j].center, tangent.line)
        steps.append((current, j, tangent, phi_out, phi_next))
        current, phi_in = j, phi_next
    else:
        raise ChainIntegrityError(f"gift-wrapping did not close after {2 * len(keep) + 2} steps")

    pieces: List[Piece] = []
    for s, (i, _, tangent, phi_out, _) in enumerate(steps):
        arrival = steps[s - 1][4]
        start = float(np.mod(arrival, TWO_PI))
        pieces.append(Arc(i, start, start + _ccw_advance(arrival, phi_out)))
        pieces.append(Segment(tangent.foot1, tangent.foot2, tangent.line))
    pieces = _merge_flat_arcs(pieces)
    logging.debug(f"hull of {len(disks)} disks: {len(pieces)} pieces over disks {sorted(set(s[0] for s in steps))}")
    return BoundaryChain(plane, disks, pieces)


# ------------------------------------------------------------
# CHAIN GEOMETRY SHARED WITH INTERSECTION REGIONS
# ------------------------------------------------------------

def piece_start(chain: BoundaryChain, piece: Piece) -> Point:
    if isinstance(piece, Arc):
        return kernel.point_on_circle(chain.plane, chain.disks[piece.disk_index], piece.start_angle)
    return piece.start


def piece_end(chain: BoundaryChain, piece: Piece) -> Point:
    if isinstance(piece, Arc):
        return kernel.point_on_circle(chain.plane, chain.disks[piece.disk_index], piece.end_angle)
    return piece.end


def piece_length(chain: BoundaryChain, piece: Piece) -> float:
    if isinstance(piece, Arc):
        return float(kernel.sigma(chain.plane, chain.disks[piece.disk_index].radius)) * piece.sweep
    return float(kernel.distance(chain.plane, piece.start, piece.end))


def check_chain(chain: BoundaryChain) -> None:
    """Raises ChainIntegrityError unless consecutive pieces meet and arcs run CCW."""
    if not chain.pieces:
        raise ChainIntegrityError("empty boundary chain")
    for piece in chain.arcs:
        if not 0 <= piece.disk_index < len(chain.disks):
            raise ChainIntegrityError(f"arc refers to missing disk {piece.disk_index}")
        if piece.sweep < -ANGLE_EPS or piece.sweep > TWO_PI + 1e-9:
            raise ChainIntegrityError(f"arc sweep {piece.sweep} outside [0, 2pi]")
    if chain.is_single_circle:
        if abs(chain.pieces[0].sweep - TWO_PI) > 1e-9:
            raise ChainIntegrityError("a one-piece chain must be a full circle")
        return
    size = len(chain.pieces)
    for index, piece in enumerate(chain.pieces):
        nxt = chain.pieces[(index + 1) % size]
        gap = float(kernel.distance(chain.plane, piece_end(chain, piece), piece_start(chain, nxt)))
        if gap > CHAIN_TOL:
            raise ChainIntegrityError(f"pieces {index} and {(index + 1) % size} are {gap:.3e} apart")


def chain_length(chain: BoundaryChain) -> float:
    return float(sum(piece_length(chain, piece) for piece in chain.pieces))


def hull_perimeter(chain: BoundaryChain) -> float:
    """Sum of arc lengths sigma(r) * sweep and segment lengths; doubled segments count twice."""
    check_chain(chain)
    return chain_length(chain)


def piece_tangents(chain: BoundaryChain, piece: Piece) -> Tuple[NDArray, NDArray]:
    """Unit CCW tangent vectors at the start and end of a piece."""
    plane = chain.plane
    if isinstance(piece, Arc):
        disk = chain.disks[piece.disk_index]
        out = []
        for angle in (piece.start_angle, piece.end_angle):
            direction = kernel.direction_from_angle(plane, disk.center, angle)
            point = kernel.exp_map(plane, disk.center, disk.radius * direction)
            radial = kernel.outward_velocity(plane, disk.center, direction, disk.radius)
            out.append(kernel.rotate90(plane, point, radial))
        return out[0], out[1]
    forward = kernel.log_map(plane, piece.start, piece.end)
    backward = kernel.log_map(plane, piece.end, piece.start)
    return forward / kernel.tangent_norm(plane, forward), -backward / kernel.tangent_norm(plane, backward)


def junction_turns(chain: BoundaryChain) -> List[float]:
    """Signed exterior angle at the end of every piece."""
    if chain.is_single_circle:
        return [0.0]
    turns = []
    size = len(chain.pieces)
    for index, piece in enumerate(chain.pieces):
        nxt = chain.pieces[(index + 1) % size]
        _, t_end = piece_tangents(chain, piece)
        t_next, _ = piece_tangents(chain, nxt)
        point = piece_start(chain, nxt)
        t_end = kernel.project_to_tangent(chain.plane, point, t_end)
        turns.append(kernel.signed_turn(chain.plane, point, t_end, t_next))
    return turns


def curvature_integral(chain: BoundaryChain) -> float:
    """Total geodesic curvature of the arcs: C(r) * sweep per arc (radius-0 arcs give the corner angle)."""
    return float(sum(kernel.turning_per_radian(chain.plane, chain.disks[a.disk_index].radius) * a.sweep
                     for a in chain.arcs))


def chain_area(chain: BoundaryChain) -> float:
    """Area enclosed by a convex chain: polygon on the piece endpoints plus one circular segment per arc."""
    plane = chain.plane
    if chain.is_single_circle:
        return kernel.circle_area(plane, chain.disks[chain.pieces[0].disk_index].radius)
    corners: List[Point] = []
    for piece in chain.pieces:
        for point in (piece_start(chain, piece), piece_end(chain, piece)):
            if not corners or float(kernel.distance(plane, corners[-1], point)) > CHAIN_TOL:
                corners.append(point)
    if len(corners) > 1 and float(kernel.distance(plane, corners[0], corners[-1])) <= CHAIN_TOL:
        corners.pop()
    polygon = kernel.convex_polygon_area(plane, corners)
    bulges = sum(kernel.circular_segment_area(plane, chain.disks[a.disk_index], a.sweep) for a in chain.arcs)
    return float(polygon + bulges)


def gauss_bonnet_area(chain: BoundaryChain) -> float:
    """Area from total turning; only meaningful for curved planes."""
    plane = chain.plane
    if plane.is_euclidean:
        raise DomainError("the euclidean plane has no Gauss-Bonnet area")
    total = curvature_integral(chain) + sum(junction_turns(chain))
    if plane.is_hyperbolic:
        return (total - TWO_PI) / plane.k ** 2
    return (TWO_PI - total) / plane.k ** 2


def gauss_bonnet_residual(chain: BoundaryChain, area: Optional[float] = None) -> float:
    """|total turning + integral of kappa_g + K * area - 2 pi| with an independently computed area."""
    area = chain_area(chain) if area is None else area
    total = curvature_integral(chain) + sum(junction_turns(chain)) + chain.plane.curvature * area
    return abs(total - TWO_PI)


# ------------------------------------------------------------
# CONTAINMENT
# ------------------------------------------------------------

def angle_in_arc(angle: float, arc: Arc) -> bool:
    return float(np.mod(angle - arc.start_angle, TWO_PI)) <= arc.sweep + ANGLE_EPS


def signed_depth(chain: BoundaryChain, p: Point) -> float:
    """
    Minimum over the chain's supporting lines of the signed distance of p.

    Inside the region this is the distance to the boundary; outside it is negative.
    """
    plane = chain.plane
    p = np.asarray(p, float)
    values = []
    for piece in chain.pieces:
        if isinstance(piece, Segment):
            line = piece.line if piece.line is not None else kernel.geodesic_through(plane, piece.start, piece.end)
            values.append(float(kernel.point_geodesic_distance(plane, p, line)))
            continue
        disk = chain.disks[piece.disk_index]
        gap = float(kernel.distance(plane, p, disk.center))
        if gap <= EPS_GEO:
            values.append(disk.radius)
            continue
        angle = float(kernel.direction_angle(plane, disk.center, kernel.log_map(plane, disk.center, p)))
        if angle_in_arc(angle, piece):
            values.append(disk.radius - gap)
        if not chain.is_single_circle:
            for end in (piece.start_angle, piece.end_angle):
                line, _ = kernel.tangent_line_at(plane, disk, end)
                values.append(float(kernel.point_geodesic_distance(plane, p, line)))
    return float(min(values))


def hull_contains(chain: BoundaryChain, p: Point) -> bool:
    return signed_depth(chain, p) >= -EPS_GEO


# ------------------------------------------------------------
# TWO DISKS
# ------------------------------------------------------------

def _tangent_angles(plane: Plane, d1: Disk, d2: Disk) -> Tuple[TangentData, float, float]:
    tangent = kernel.directed_tangent(plane, d1, d2)
    a1 = kernel.angle_at(plane, d1.center, tangent.foot1, d2.center) if d1.radius > 0 else np.pi / 2
    a2 = kernel.angle_at(plane, d2.center, tangent.foot2, d1.center) if d2.radius > 0 else np.pi / 2
    return tangent, a1, a2


def two_disk_perimeter(plane: Plane, d1: Disk, d2: Disk) -> float:
    """2((pi - angle q1 p1 p2) sigma(r1) + d(q1, q2) + (pi - angle q2 p2 p1) sigma(r2))."""
    if _contained_in(plane, d2, d1):
        return kernel.circle_perimeter(plane, d1.radius)
    if _contained_in(plane, d1, d2):
        return kernel.circle_perimeter(plane, d2.radius)
    tangent, a1, a2 = _tangent_angles(plane, d1, d2)
    feet = float(kernel.distance(plane, tangent.foot1, tangent.foot2))
    return 2.0 * ((np.pi - a1) * float(kernel.sigma(plane, d1.radius)) + feet
                  + (np.pi - a2) * float(kernel.sigma(plane, d2.radius)))


def two_disk_comparison(plane: Plane, original: Tuple[Disk, Disk], contracted: Tuple[Disk, Disk]) -> TwoDiskComparison:
    """
    Compares tangent-foot distance and the angle at the larger center before and after
    contracting a pair, and tests whether the contracted smaller disk, carried by the
    isometry aligning the contracted larger center and direction onto the original ones,
    stays inside the original two-disk hull.

    A pair where one disk contains the other (before or after) has no outer tangent; it is
    reported with ``nested`` set and NaN feet and angles.
    """
    d1, d2 = original
    e1, e2 = contracted
    if d2.radius > d1.radius:
        d1, d2, e1, e2 = d2, d1, e2, e1
    distance_before = float(kernel.distance(plane, d1.center, d2.center))
    distance_after = float(kernel.distance(plane, e1.center, e2.center))
    decreased = distance_after < distance_before - EPS_GEO
    if any(_contained_in(plane, a, b) for a, b in ((d1, d2), (d2, d1), (e1, e2), (e2, e1))):
        logging.debug("two-disk comparison of a nested pair: no outer tangent")
        return TwoDiskComparison(foot_distance_before=np.nan, foot_distance_after=np.nan,
                                 angle_before=np.nan, angle_after=np.nan,
                                 distance_decreased=decreased, contracted_inside_hull=_contained_in(plane, e2, e1),
                                 foot_margin=np.nan, angle_margin=np.nan, nested=True,
                                 hyperbolic=plane.is_hyperbolic)
    tangent, angle_before, _ = _tangent_angles(plane, d1, d2)
    tangent_after, angle_after, _ = _tangent_angles(plane, e1, e2)
    before = float(kernel.distance(plane, tangent.foot1, tangent.foot2))
    after = float(kernel.distance(plane, tangent_after.foot1, tangent_after.foot2))
    iso = kernel.align_pair(plane, e1.center, e2.center, d1.center, d2.center)
    moved = Disk(kernel.apply(plane, iso, e2.center), e2.radius)
    chain = hull_boundary(Configuration(plane, [d1, d2]))
    inside = signed_depth(chain, moved.center) >= moved.radius - EPS_GEO
    return TwoDiskComparison(foot_distance_before=before, foot_distance_after=after,
                             angle_before=float(angle_before), angle_after=float(angle_after),
                             distance_decreased=decreased, contracted_inside_hull=bool(inside),
                             foot_margin=before - after, angle_margin=float(angle_after - angle_before),
                             nested=False, hyperbolic=plane.is_hyperbolic)


def sample_chain(chain: BoundaryChain, count: int) -> NDArray:
    """About ``count`` boundary points spread by length (at least one per piece)."""
    plane = chain.plane
    lengths = np.array([piece_length(chain, piece) for piece in chain.pieces])
    total = float(lengths.sum())
    points = []
    for piece, length in zip(chain.pieces, lengths):
        n = max(1, int(round(count * length / total))) if total > 0 else 1
        t = np.arange(n) / n
        if isinstance(piece, Arc):
            disk = chain.disks[piece.disk_index]
            points.append(np.atleast_2d(kernel.point_on_circle(plane, disk, piece.start_angle + t * piece.sweep)))
        elif length <= EPS_GEO:
            points.append(np.atleast_2d(piece.start))
        else:
            step = kernel.log_map(plane, piece.start, piece.end)
            points.append(np.atleast_2d(kernel.exp_map(plane, piece.start, t[:, None] * step)))
    return np.vstack(points)
