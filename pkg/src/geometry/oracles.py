"""
Independent numerical oracles used to cross-check the exact constructions.

None of these functions reuse the closed forms they check: perimeters come from
polygonal approximations, areas from Monte-Carlo counts, inscribed disks from a grid.
"""
from typing import Callable, List, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.ndimage import maximum_filter
from scipy.optimize import minimize, minimize_scalar

from src.constants import ANGLE_EPS, EPS_GEO
from src.entity.geometry_entity import Plane, Point
from src.entity.shape_entity import BoundaryChain, IntersectionRegion, Segment
from src.geometry import kernel
from src.geometry.disk_hull import sample_chain, signed_depth
from src.geometry.disk_intersection import region_contains

Indicator = Callable[[NDArray], NDArray]
ORACLE_MERGE_TOL = 1e-4
SHARED_CENTER_TOL = 1e-6


def polygonal_perimeter(chain: BoundaryChain, samples: int = 100_000) -> float:
    """Length of the closed geodesic polygon through ``samples`` boundary points."""
    points = sample_chain(chain, samples)
    rolled = np.roll(points, -1, axis=0)
    return float(np.sum(kernel.distance(chain.plane, points, rolled)))


def polygonal_circle_perimeter(plane: Plane, radius: float, sides: int = 100_000) -> float:
    """Perimeter of the regular ``sides``-gon inscribed in a circle of the given radius."""
    center = plane.origin
    a = kernel.point_from_polar(plane, radius, 0.0, center)
    b = kernel.point_from_polar(plane, radius, kernel.TWO_PI / sides, center)
    return float(sides * kernel.distance(plane, a, b))


def hull_indicator(chain: BoundaryChain) -> Indicator:
    def inside(points: NDArray) -> NDArray:
        return np.array([signed_depth(chain, x) >= 0.0 for x in np.atleast_2d(points)])
    return inside


def intersection_indicator(region: IntersectionRegion) -> Indicator:
    def inside(points: NDArray) -> NDArray:
        if region.empty_flag:
            return np.zeros(len(np.atleast_2d(points)), dtype=bool)
        return region_contains(region, points, tol=0.0)
    return inside


def monte_carlo_area(plane: Plane, indicator: Indicator, center: Point, radius: float,
                     samples: int, seed: int, shards: int = 1) -> Tuple[float, float]:
    """
    Area of {indicator} inside B(center, radius) with its standard error.

    Each shard draws from its own Philox stream spawned from ``seed``, so results depend
    only on (seed, shards, samples).
    """
    streams = np.random.SeedSequence(seed).spawn(shards)
    per_shard = np.full(shards, samples // shards)
    per_shard[: samples % shards] += 1
    hits = 0
    for stream, count in zip(streams, per_shard):
        rng = np.random.Generator(np.random.Philox(stream))
        points = kernel.sample_ball(plane, center, radius, int(count), rng)
        hits += int(np.sum(indicator(points)))
    ball = kernel.circle_area(plane, radius)
    fraction = hits / samples
    return ball * fraction, ball * float(np.sqrt(fraction * (1.0 - fraction) / samples))


def depth_field(chain: BoundaryChain, points: NDArray) -> NDArray:
    """``signed_depth`` of many points at once: the minimum over the chain's supporting lines."""
    plane = chain.plane
    points = np.atleast_2d(points)
    depth = np.full(len(points), np.inf)
    for piece in chain.pieces:
        if isinstance(piece, Segment):
            line = piece.line if piece.line is not None else kernel.geodesic_through(plane, piece.start, piece.end)
            depth = np.minimum(depth, kernel.point_geodesic_distance(plane, points, line))
            continue
        disk = chain.disks[piece.disk_index]
        gap = kernel.distance(plane, points, disk.center)
        angle = kernel.direction_angle(plane, disk.center, kernel.log_map(plane, disk.center, points))
        on_arc = np.mod(angle - piece.start_angle, kernel.TWO_PI) <= piece.sweep + ANGLE_EPS
        depth = np.where(gap <= EPS_GEO, np.minimum(depth, disk.radius), depth)
        depth = np.where((gap > EPS_GEO) & on_arc, np.minimum(depth, disk.radius - gap), depth)
        if not chain.is_single_circle:
            for end in (piece.start_angle, piece.end_angle):
                line, _ = kernel.tangent_line_at(plane, disk, end)
                depth = np.minimum(depth, kernel.point_geodesic_distance(plane, points, line))
    return depth


def grid_local_maxima(chain: BoundaryChain, base: Point, extent: float,
                      resolution: int = 400) -> List[Tuple[Point, float]]:
    """
    Local maxima of the depth on a resolution x resolution grid of exponential coordinates
    around ``base``, each refined by Nelder-Mead; deepest first.
    """
    plane = chain.plane
    e1, e2 = kernel.frame(plane, base)
    axis = np.linspace(-extent, extent, resolution)
    u, v = np.meshgrid(axis, axis)
    points = kernel.exp_map(plane, base, u.reshape(-1, 1) * e1 + v.reshape(-1, 1) * e2)
    depths = depth_field(chain, points).reshape(resolution, resolution)
    peaks = np.argwhere((depths == maximum_filter(depths, size=3, mode="constant", cval=-np.inf)) & (depths > 0.0))

    def negative_depth(w: NDArray) -> float:
        return -signed_depth(chain, kernel.exp_map(plane, base, w[0] * e1 + w[1] * e2))

    found: List[Tuple[Point, float]] = []
    for row, col in peaks:
        result = minimize(negative_depth, np.array([u[row, col], v[row, col]]), method="Nelder-Mead",
                          options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 2000})
        point = kernel.exp_map(plane, base, result.x[0] * e1 + result.x[1] * e2)
        if all(float(kernel.distance(plane, point, p)) > ORACLE_MERGE_TOL for p, _ in found):
            found.append((point, -float(result.fun)))
    return sorted(found, key=lambda item: -item[1])


def shrinking_ball_centers(chain: BoundaryChain, samples: int = 2000,
                           tol: float = 1e-11) -> Tuple[NDArray, NDArray]:
    """
    Center and radius of the largest inscribed disk tangent to the boundary at each sampled
    boundary point, by bisection along the inward normal.
    """
    plane = chain.plane
    points = sample_chain(chain, samples)
    step = kernel.distance(plane, points, np.roll(points, -1, axis=0))
    points = points[step > 1e-12]
    after = kernel.log_map(plane, points, np.roll(points, -1, axis=0))
    before = kernel.log_map(plane, points, np.roll(points, 1, axis=0))
    along = after - before
    inward = kernel.rotate90(plane, points, along / kernel.tangent_norm(plane, along)[:, None])
    low = np.zeros(len(points))
    # an inscribed radius never exceeds the distance between two boundary points
    high = np.full(len(points), float(np.max(kernel.distance(plane, points[0], points))) + 1.0)
    while float(np.max(high - low)) > tol:
        mid = 0.5 * (low + high)
        fits = depth_field(chain, kernel.exp_map(plane, points, mid[:, None] * inward)) >= mid - tol
        low = np.where(fits, mid, low)
        high = np.where(fits, high, mid)
    return kernel.exp_map(plane, points, low[:, None] * inward), low


def grid_central_vertices(chain: BoundaryChain, base: Point, extent: float, resolution: int = 400,
                          samples: int = 2000) -> List[Tuple[Point, float]]:
    """
    Brute-force vertices of the central set: grid local maxima of the depth (branch points)
    and the centers that three or more boundary samples share (a disk touching along an arc).
    """
    plane = chain.plane
    found = grid_local_maxima(chain, base, extent, resolution)
    centers, radii = shrinking_ball_centers(chain, samples)
    claimed = np.zeros(len(centers), dtype=bool)
    for i in range(len(centers)):
        if claimed[i]:
            continue
        close = (kernel.distance(plane, centers[i], centers) <= SHARED_CENTER_TOL) & ~claimed
        claimed |= close
        if np.count_nonzero(close) < 3:
            continue
        point = centers[np.flatnonzero(close)[0]]
        if all(float(kernel.distance(plane, point, p)) > ORACLE_MERGE_TOL for p, _ in found):
            found.append((point, float(np.mean(radii[close]))))
    return found


def depth_along(chain: BoundaryChain, p: Point, direction: NDArray, extent: float) -> Tuple[Point, float]:
    """Deepest point of the hull on the geodesic through p with the given direction, by bounded search."""
    plane = chain.plane
    unit = direction / kernel.tangent_norm(plane, direction)
    result = minimize_scalar(lambda t: -signed_depth(chain, kernel.exp_map(plane, p, t * unit)),
                             bounds=(-extent, extent), method="bounded", options={"xatol": 1e-12})
    return kernel.exp_map(plane, p, result.x * unit), -float(result.fun)
