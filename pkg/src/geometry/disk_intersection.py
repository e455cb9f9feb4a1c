"""
Intersection U of finitely many closed disks: a convex region bounded by circle arcs.
"""
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import minimize

from src.constants import (EMPTINESS_TOL, EPS_GEO, MINIMAX_POLISH_ITERATIONS,
                           MINIMAX_SUBGRADIENT_STEPS)
from src.entity.geometry_entity import Configuration, Disk, Plane, Point
from src.entity.shape_entity import Arc, BoundaryChain, IntersectionRegion
from src.exception import ChainIntegrityError
from src.geometry import kernel
from src.geometry.disk_hull import (CHAIN_TOL, chain_area, check_chain,
                                    gauss_bonnet_area, piece_end, piece_start,
                                    validate_configuration)
from src.geometry.kernel import TWO_PI
from src.logger import logging

Interval = Tuple[float, float]

# clipped arcs narrower than this (radians) are tangency points
TOUCH_ANGLE = 1e-7


# ------------------------------------------------------------
# EMPTINESS
# ------------------------------------------------------------

def _excess(plane: Plane, x: Point, centers: NDArray, radii: NDArray) -> NDArray:
    return kernel.distance(plane, x, centers) - radii


def deepest_point(config: Configuration) -> Tuple[Point, float]:
    """
    Minimizer of f(x) = max_i (d(x, p_i) - r_i) and its value.

    Subgradient descent along geodesics with diminishing steps, then an SLSQP polish of the
    epigraph problem in exponential coordinates around the best iterate.
    """
    plane = config.plane
    centers, radii = config.centers, config.radii
    values = [float(np.max(_excess(plane, c, centers, radii))) for c in centers]
    best = centers[int(np.argmin(values))].copy()
    best_value = min(values)
    x = best.copy()
    spread = float(np.max(kernel.distance(plane, x, centers))) or 1.0
    for step in range(MINIMAX_SUBGRADIENT_STEPS):
        excess = _excess(plane, x, centers, radii)
        top = int(np.argmax(excess))
        toward = kernel.log_map(plane, x, centers[top])
        length = float(kernel.tangent_norm(plane, toward))
        if length <= 1e-300:
            break
        x = kernel.exp_map(plane, x, (0.5 * spread / np.sqrt(step + 1.0)) * toward / length)
        value = float(np.max(_excess(plane, x, centers, radii)))
        if value < best_value:
            best, best_value = x.copy(), value

    e1, e2 = kernel.frame(plane, best)

    def lift(v: NDArray) -> Point:
        return kernel.exp_map(plane, best, v[0] * e1 + v[1] * e2)

    constraints = [{"type": "ineq", "fun": lambda v, i=i: v[2] - float(_excess(plane, lift(v), centers[i], radii[i]))}
                   for i in range(len(radii))]
    result = minimize(lambda v: v[2], np.array([0.0, 0.0, best_value]), method="SLSQP",
                      constraints=constraints, options={"maxiter": MINIMAX_POLISH_ITERATIONS, "ftol": 1e-15})
    polished = lift(result.x)
    polished_value = float(np.max(_excess(plane, polished, centers, radii)))
    if polished_value < best_value:
        best, best_value = polished, polished_value
    logging.debug(f"minimax witness value {best_value:.3e}")
    return best, best_value


def is_nonempty(config: Configuration) -> Tuple[bool, Optional[Point]]:
    """
    Method Name :   is_nonempty
    Description :   decides whether the disks have a common point; cheap certificates first
                    (one disk, a disjoint pair, a center inside every disk), then the minimax search

    Output      :   (nonempty, witness point or None)
    On Failure  :   DomainError / HemisphereError for invalid input
    """
    validate_configuration(config)
    plane = config.plane
    centers, radii = config.centers, config.radii
    if len(config) == 1:
        return True, centers[0].copy()
    for i in range(len(config)):
        gaps = kernel.distance(plane, centers[i], centers[i + 1:]) - radii[i] - radii[i + 1:]
        if np.any(gaps > EMPTINESS_TOL):
            return False, None
    for center in centers:
        if np.all(_excess(plane, center, centers, radii) <= EMPTINESS_TOL):
            return True, center.copy()
    witness, value = deepest_point(config)
    if value <= EMPTINESS_TOL:
        return True, witness
    return False, None


# ------------------------------------------------------------
# BOUNDARY
# ------------------------------------------------------------

def prune_supersets(config: Configuration) -> List[int]:
    """Indices of disks containing no other disk; among equal disks the lowest index survives."""
    plane, disks = config.plane, config.disks
    keep = []
    for j, outer in enumerate(disks):
        redundant = False
        for i, inner in enumerate(disks):
            if i == j:
                continue
            inside = float(kernel.distance(plane, inner.center, outer.center)) <= outer.radius - inner.radius + EPS_GEO
            if not inside:
                continue
            equal = float(kernel.distance(plane, inner.center, outer.center)) <= EPS_GEO and abs(inner.radius - outer.radius) <= EPS_GEO
            if not equal or i < j:
                redundant = True
                break
        if not redundant:
            keep.append(j)
    return keep


def _intersect_intervals(first: Sequence[Interval], second: Sequence[Interval]) -> List[Interval]:
    out = []
    for a0, a1 in first:
        for b0, b1 in second:
            for shift in (-TWO_PI, 0.0, TWO_PI):
                lo, hi = max(a0, b0 + shift), min(a1, b1 + shift)
                if hi - lo > 1e-12:
                    out.append((lo, hi))
    return out


def _boundary_intervals(plane: Plane, disks: Sequence[Disk], index: int, others: Sequence[int]) -> List[Interval]:
    """Angular intervals of the circle of disks[index] lying inside every other disk."""
    intervals: Optional[List[Interval]] = None
    for j in others:
        overlap = kernel.circle_overlap_interval(plane, disks[index], disks[j])
        if overlap is None:
            return []
        theta, half = overlap
        if half <= TOUCH_ANGLE:
            return []
        if half >= np.pi:
            continue
        window = [(theta - half, theta + half)]
        intervals = window if intervals is None else _intersect_intervals(intervals, window)
        if not intervals:
            return []
    if intervals is None:
        return [(0.0, TWO_PI)]
    out = []
    for lo, hi in intervals:
        start = float(np.mod(lo, TWO_PI))
        out.append((start, start + (hi - lo)))
    return out


def _order_cycle(chain: BoundaryChain, arcs: List[Arc]) -> List[Arc]:
    plane = chain.plane
    ordered = [arcs[0]]
    remaining = arcs[1:]
    while remaining:
        end = piece_end(chain, ordered[-1])
        gaps = [float(kernel.distance(plane, end, piece_start(chain, arc))) for arc in remaining]
        nearest = int(np.argmin(gaps))
        if gaps[nearest] > 1e3 * CHAIN_TOL:
            raise ChainIntegrityError(f"intersection arcs do not chain up (gap {gaps[nearest]:.3e})")
        ordered.append(remaining.pop(nearest))
    return ordered


def intersect_disks(config: Configuration) -> IntersectionRegion:
    """
    Method Name :   intersect_disks
    Description :   clips every minimal disk's boundary circle by all other disks and chains the
                    surviving arcs CCW; degenerate (single point) and empty intersections are flagged

    Output      :   IntersectionRegion with arc indices referring to config.disks
    On Failure  :   DomainError / HemisphereError for invalid input, ChainIntegrityError when the
                    clipped arcs do not close up
    """
    validate_configuration(config)
    plane, disks = config.plane, list(config.disks)
    empty_chain = BoundaryChain(plane, disks, [])
    nonempty, witness = is_nonempty(config)
    if not nonempty:
        return IntersectionRegion(plane, disks, empty_chain, empty_flag=True)
    keep = prune_supersets(config)
    if len(keep) == 1:
        index = keep[0]
        chain = BoundaryChain(plane, disks, [Arc(index, 0.0, TWO_PI)])
        return IntersectionRegion(plane, disks, chain, full_disk_index=index, witness=disks[index].center.copy())

    arcs = []
    for i in keep:
        for start, end in _boundary_intervals(plane, disks, i, [j for j in keep if j != i]):
            arcs.append(Arc(i, start, end))
    if len(arcs) < 2:
        # no interior: the disks meet in a single point
        logging.debug("intersection without interior")
        return IntersectionRegion(plane, disks, empty_chain, vertices=[witness], witness=witness)
    chain = BoundaryChain(plane, disks, [])
    chain.pieces = _order_cycle(chain, arcs)
    check_chain(chain)
    vertices = [piece_end(chain, arc) for arc in chain.pieces]
    deep, _ = deepest_point(config)
    logging.debug(f"intersection of {len(disks)} disks: {len(chain.pieces)} arcs")
    return IntersectionRegion(plane, disks, chain, vertices=vertices, witness=deep)


# ------------------------------------------------------------
# AREAS
# ------------------------------------------------------------

def region_area(region: IntersectionRegion) -> float:
    """Area of the region: Gauss-Bonnet on curved planes, polygon plus circular segments on the flat one."""
    if region.empty_flag or not region.chain.pieces:
        return 0.0
    plane = region.plane
    if region.full_disk_flag:
        return kernel.circle_area(plane, region.disks[region.full_disk_index].radius)
    check_chain(region.chain)
    if plane.is_euclidean:
        return max(chain_area(region.chain), 0.0)
    return max(gauss_bonnet_area(region.chain), 0.0)


def lens_area(plane: Plane, d1: Disk, d2: Disk) -> float:
    """area(D1 n D2) as the sum of the two circular segments cut off by the common chord."""
    d = float(kernel.distance(plane, d1.center, d2.center))
    if d >= d1.radius + d2.radius:
        return 0.0
    if d <= abs(d1.radius - d2.radius):
        return kernel.circle_area(plane, min(d1.radius, d2.radius))
    _, beta1 = kernel.circle_overlap_interval(plane, d1, d2)
    _, beta2 = kernel.circle_overlap_interval(plane, d2, d1)
    return float(kernel.circular_segment_area(plane, d1, 2.0 * beta1)
                 + kernel.circular_segment_area(plane, d2, 2.0 * beta2))


def region_contains(region: IntersectionRegion, points: NDArray, tol: float = EPS_GEO) -> NDArray:
    """Boolean membership of points (N, 3) in every disk of the region."""
    plane = region.plane
    points = np.atleast_2d(points)
    inside = np.ones(len(points), dtype=bool)
    for disk in region.disks:
        inside &= kernel.distance(plane, points, disk.center) <= disk.radius + tol
    return inside
