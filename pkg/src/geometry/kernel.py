"""
Exact-formula primitives of the three constant-curvature planes.

Every point lives in the linear model of its plane (see ``src.entity.geometry_entity``),
so isometries are 3x3 matrices in all three geometries and most formulas are written
once with the generalized trigonometric functions

    C(s) = cosh(ks) | 1 | cos(ks)        S(s) = sinh(ks)/k | s | sin(ks)/k

so that the unit-speed geodesic leaving p with unit tangent u is C(s) p + S(s) u.
Functions accept single points of shape (3,) and, where noted, batches of shape (N, 3).
"""
from typing import Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import brentq

from src.constants import (ANGLE_EPS, EPS_GEO, POLE_PROXIMITY_TOL,
                           TANGENT_BISECTION_GRID, TANGENT_RESIDUAL_TOL)
from src.entity.geometry_entity import (Disk, Geodesic, Isometry, ModelKind,
                                        Plane, Point, TangentData)
from src.exception import (DegenerateGeodesicError, DomainError,
                           InfiniteCurvatureError, InfiniteFamilyError,
                           NoTangentError, PoleProximityError)
from src.logger import logging

TWO_PI = 2.0 * np.pi

_FORM_DIAG = {
    ModelKind.HYPERBOLIC: np.array([1.0, 1.0, -1.0]),
    ModelKind.EUCLIDEAN: np.array([1.0, 1.0, 0.0]),
    ModelKind.SPHERICAL: np.array([1.0, 1.0, 1.0]),
}


# ------------------------------------------------------------
# FORMS AND GENERALIZED TRIGONOMETRY
# ------------------------------------------------------------

def form(plane: Plane, a: ArrayLike, b: ArrayLike) -> NDArray:
    """Model bilinear form on the last axis (degenerate diag(1,1,0) on the euclidean chart)."""
    return np.sum(np.asarray(a, float) * _FORM_DIAG[plane.kind] * np.asarray(b, float), axis=-1)


def tangent_norm(plane: Plane, v: ArrayLike) -> NDArray:
    return np.sqrt(np.maximum(form(plane, v, v), 0.0))


def linear_functional(plane: Plane, n: ArrayLike, x: ArrayLike) -> NDArray:
    """<n, x> pairing of a geodesic normal with a point; equals S(signed distance)."""
    n = np.asarray(n, float)
    x = np.asarray(x, float)
    if plane.is_hyperbolic:
        return np.sum(n * _FORM_DIAG[ModelKind.HYPERBOLIC] * x, axis=-1)
    return np.sum(n * x, axis=-1)


def gen_cos(plane: Plane, s: ArrayLike) -> NDArray:
    s = np.asarray(s, float)
    if plane.is_hyperbolic:
        return np.cosh(plane.k * s)
    if plane.is_spherical:
        return np.cos(plane.k * s)
    return np.ones_like(s)


def sigma(plane: Plane, s: ArrayLike) -> NDArray:
    """Circumference factor: circle of radius s has perimeter 2*pi*sigma(s)."""
    s = np.asarray(s, float)
    if plane.is_hyperbolic:
        return np.sinh(plane.k * s) / plane.k
    if plane.is_spherical:
        return np.sin(plane.k * s) / plane.k
    return s


def _gen_cos_derivative(plane: Plane, s: ArrayLike) -> NDArray:
    s = np.asarray(s, float)
    if plane.is_hyperbolic:
        return plane.k * np.sinh(plane.k * s)
    if plane.is_spherical:
        return -plane.k * np.sin(plane.k * s)
    return np.zeros_like(s)


def inverse_sigma(plane: Plane, value: ArrayLike) -> NDArray:
    value = np.asarray(value, float)
    if plane.is_hyperbolic:
        return np.arcsinh(plane.k * value) / plane.k
    if plane.is_spherical:
        return np.arcsin(np.clip(plane.k * value, -1.0, 1.0)) / plane.k
    return value


# ------------------------------------------------------------
# POINTS
# ------------------------------------------------------------

def validate_point(plane: Plane, p: ArrayLike) -> Point:
    """Returns ``p`` as a float array or raises DomainError when it is off the model surface."""
    p = np.asarray(p, dtype=float)
    if p.shape[-1:] != (3,) or not np.all(np.isfinite(p)):
        raise DomainError(f"point must be a finite 3-vector, got {p!r}")
    if plane.is_hyperbolic:
        hat = plane.k * p
        residual = np.abs(form(plane, hat, hat) + 1.0)
        scale = 1.0 + np.sum(hat * hat, axis=-1)
        if np.any(residual > 1e-8 * scale) or np.any(hat[..., 2] <= 0.0):
            raise DomainError(f"point is not on the upper hyperboloid sheet for k={plane.k}: {p!r}")
    elif plane.is_spherical:
        residual = np.abs(np.linalg.norm(plane.k * p, axis=-1) - 1.0)
        if np.any(residual > 1e-8):
            raise DomainError(f"point is not on the sphere of radius 1/{plane.k}: {p!r}")
    elif np.any(np.abs(p[..., 2] - 1.0) > 1e-12):
        raise DomainError(f"euclidean chart points need third coordinate 1: {p!r}")
    return p


def normalize_point(plane: Plane, x: ArrayLike) -> Point:
    """Pulls a nearly-valid vector back onto the model surface (drift control)."""
    x = np.array(x, dtype=float)
    if plane.is_hyperbolic:
        q = -form(plane, x, x)
        x = x / (plane.k * np.sqrt(np.maximum(q, 1e-300)))[..., None]
        return x * np.where(x[..., 2:3] < 0.0, -1.0, 1.0)
    if plane.is_spherical:
        return x / (plane.k * np.linalg.norm(x, axis=-1))[..., None]
    return x / x[..., 2:3]


def point_from_xy(plane: Plane, x: float, y: float) -> Point:
    """Point from its first two linear-model coordinates (upper hemisphere on the sphere)."""
    if plane.is_euclidean:
        return np.array([x, y, 1.0])
    if plane.is_hyperbolic:
        return np.array([x, y, np.sqrt(1.0 / plane.k ** 2 + x * x + y * y)])
    z2 = 1.0 / plane.k ** 2 - x * x - y * y
    if z2 < 0.0:
        raise DomainError(f"({x}, {y}) is outside the sphere of radius 1/{plane.k}")
    return np.array([x, y, np.sqrt(z2)])


def point_from_polar(plane: Plane, rho: float, theta: float, base: Optional[Point] = None) -> Point:
    """Point at distance rho from ``base`` (chart origin by default) in frame direction theta."""
    base = plane.origin if base is None else np.asarray(base, float)
    return exp_map(plane, base, rho * direction_from_angle(plane, base, theta))


# ------------------------------------------------------------
# DISTANCE, EXPONENTIAL AND LOGARITHM
# ------------------------------------------------------------

def distance(plane: Plane, p: ArrayLike, q: ArrayLike) -> NDArray:
    """Intrinsic distance; broadcasts over leading axes."""
    p = np.asarray(p, float)
    q = np.asarray(q, float)
    if plane.is_hyperbolic:
        v = p - q
        chord = np.sqrt(np.maximum(form(plane, v, v), 0.0))
        return 2.0 * np.arcsinh(plane.k * chord / 2.0) / plane.k
    if plane.is_spherical:
        ph, qh = plane.k * p, plane.k * q
        cross = np.linalg.norm(np.cross(ph, qh), axis=-1)
        return np.arctan2(cross, np.sum(ph * qh, axis=-1)) / plane.k
    return np.linalg.norm((p - q)[..., :2], axis=-1)


def log_map(plane: Plane, p: ArrayLike, q: ArrayLike) -> NDArray:
    """Tangent vector at p pointing to q with length distance(p, q); zero when p == q."""
    p = np.asarray(p, float)
    q = np.asarray(q, float)
    if plane.is_euclidean:
        w = q - p
        w[..., 2] = 0.0
        return w
    inner = linear_functional(plane, p, q)
    if plane.is_hyperbolic:
        w = q + (plane.k ** 2 * inner)[..., None] * p
    else:
        w = q - (plane.k ** 2 * inner)[..., None] * p
    length = tangent_norm(plane, w)
    d = distance(plane, p, q)
    scale = np.where(length > 1e-300, d / np.where(length > 1e-300, length, 1.0), 0.0)
    return w * scale[..., None]


def project_to_tangent(plane: Plane, p: ArrayLike, v: ArrayLike) -> NDArray:
    """Component of an ambient vector v tangent to the model surface at p."""
    p = np.asarray(p, float)
    out = np.array(v, dtype=float)
    if plane.is_euclidean:
        out[..., 2] = 0.0
        return out
    inner = linear_functional(plane, v, p)
    if plane.is_hyperbolic:
        return out + (plane.k ** 2 * inner)[..., None] * p
    return out - (plane.k ** 2 * inner)[..., None] * p


def exp_map(plane: Plane, p: ArrayLike, v: ArrayLike) -> Point:
    """Endpoint of the geodesic leaving p with initial velocity v, after time 1."""
    p = np.asarray(p, float)
    v = np.asarray(v, float)
    length = tangent_norm(plane, v)
    if plane.is_euclidean:
        out = p + v
        out[..., 2] = 1.0
        return out
    safe = np.where(length > 1e-300, length, 1.0)
    unit = v / safe[..., None]
    out = gen_cos(plane, length)[..., None] * p + sigma(plane, length)[..., None] * unit
    return normalize_point(plane, out)


def rotate90(plane: Plane, p: ArrayLike, v: ArrayLike) -> NDArray:
    """CCW quarter turn J_p of a tangent vector at p."""
    p = np.asarray(p, float)
    v = np.asarray(v, float)
    if plane.is_euclidean:
        out = np.zeros(np.broadcast(p, v).shape)
        out[..., 0] = -v[..., 1]
        out[..., 1] = v[..., 0]
        return out
    cross = np.cross(p, v) * plane.k
    if plane.is_hyperbolic:
        return cross * _FORM_DIAG[ModelKind.HYPERBOLIC]
    return cross


def frame(plane: Plane, p: ArrayLike) -> Tuple[NDArray, NDArray]:
    """Canonical orthonormal tangent frame (e1, e2 = J e1) at a single point p."""
    p = np.asarray(p, float)
    if plane.is_euclidean:
        return np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])
    if plane.is_hyperbolic:
        axis = np.array([1.0, 0.0, 0.0])
        w = axis + plane.k ** 2 * linear_functional(plane, axis, p) * p
    else:
        axis = np.zeros(3)
        axis[int(np.argmin(np.abs(p)))] = 1.0
        w = axis - plane.k ** 2 * np.dot(axis, p) * p
    e1 = w / tangent_norm(plane, w)
    return e1, rotate90(plane, p, e1)


def direction_from_angle(plane: Plane, p: ArrayLike, theta: ArrayLike) -> NDArray:
    e1, e2 = frame(plane, p)
    theta = np.asarray(theta, float)
    return np.cos(theta)[..., None] * e1 + np.sin(theta)[..., None] * e2


def direction_angle(plane: Plane, p: ArrayLike, v: ArrayLike) -> NDArray:
    """Angle in [0, 2*pi) of tangent vector(s) v at p, measured in the canonical frame."""
    e1, e2 = frame(plane, p)
    return np.mod(np.arctan2(form(plane, v, e2), form(plane, v, e1)), TWO_PI)


def outward_velocity(plane: Plane, center: ArrayLike, direction: ArrayLike, r: ArrayLike) -> NDArray:
    """Velocity at distance r of the unit-speed geodesic leaving ``center`` along unit ``direction``."""
    r = np.asarray(r, float)
    center = np.asarray(center, float)
    direction = np.asarray(direction, float)
    if plane.is_euclidean:
        return np.broadcast_to(direction, np.broadcast(direction, r[..., None]).shape).copy()
    return _gen_cos_derivative(plane, r)[..., None] * center + gen_cos(plane, r)[..., None] * direction


def point_on_circle(plane: Plane, disk: Disk, theta: ArrayLike) -> Point:
    """Point(s) of the boundary circle of ``disk`` at frame angle(s) theta."""
    direction = direction_from_angle(plane, disk.center, theta)
    return exp_map(plane, disk.center, disk.radius * direction)


def angle_at(plane: Plane, a: ArrayLike, b: ArrayLike, c: ArrayLike) -> float:
    """Unsigned angle at a of the geodesic triangle abc, in [0, pi]."""
    u = log_map(plane, a, b)
    w = log_map(plane, a, c)
    if tangent_norm(plane, u) < 1e-300 or tangent_norm(plane, w) < 1e-300:
        return 0.0
    return float(abs(np.arctan2(form(plane, rotate90(plane, a, u), w), form(plane, u, w))))


def signed_turn(plane: Plane, p: ArrayLike, u: ArrayLike, w: ArrayLike) -> float:
    """Signed CCW angle in (-pi, pi] turning tangent vector u into w at p."""
    return float(np.arctan2(form(plane, rotate90(plane, p, u), w), form(plane, u, w)))


# ------------------------------------------------------------
# GEODESICS
# ------------------------------------------------------------

def _require_distinct(plane: Plane, p: Point, q: Point) -> float:
    d = float(distance(plane, p, q))
    if d <= EPS_GEO:
        raise DegenerateGeodesicError("coincident endpoints do not determine a geodesic")
    if plane.is_spherical and abs(d - np.pi / plane.k) <= EPS_GEO:
        raise DegenerateGeodesicError("antipodal endpoints do not determine a geodesic")
    return d


def geodesic_from_direction(plane: Plane, p: ArrayLike, u: ArrayLike) -> Geodesic:
    """Oriented geodesic through p travelling along tangent direction u."""
    p = np.asarray(p, float)
    u = np.asarray(u, float)
    u = u / tangent_norm(plane, u)
    n = rotate90(plane, p, u)
    if plane.is_euclidean:
        n = np.array([n[0], n[1], -(n[0] * p[0] + n[1] * p[1])])
    return Geodesic(normal=n)


def geodesic_through(plane: Plane, p: ArrayLike, q: ArrayLike) -> Geodesic:
    """Complete geodesic through p and q, oriented from p to q."""
    p = validate_point(plane, p)
    q = validate_point(plane, q)
    _require_distinct(plane, p, q)
    return geodesic_from_direction(plane, p, log_map(plane, p, q))


def geodesic_point(plane: Plane, p: ArrayLike, q: ArrayLike, t: float) -> Point:
    """Point at fraction t of the geodesic segment [p, q]."""
    p = validate_point(plane, p)
    q = validate_point(plane, q)
    _require_distinct(plane, p, q)
    return exp_map(plane, p, t * log_map(plane, p, q))


def point_geodesic_distance(plane: Plane, p: ArrayLike, e: Geodesic) -> NDArray:
    """Signed distance of point(s) p to e, positive on the left of e's direction."""
    return inverse_sigma(plane, linear_functional(plane, e.normal, p))


def project_to_geodesic(plane: Plane, p: ArrayLike, e: Geodesic) -> Point:
    """Foot of the perpendicular from p to e."""
    p = np.asarray(p, float)
    n = e.normal
    a = linear_functional(plane, n, p)
    if plane.is_euclidean:
        return p - a[..., None] * np.array([n[0], n[1], 0.0])
    return normalize_point(plane, p - a[..., None] * n)


def geodesic_direction_at(plane: Plane, e: Geodesic, x: ArrayLike) -> NDArray:
    """Unit direction of travel of e at one of its points x."""
    x = np.asarray(x, float)
    if plane.is_euclidean:
        return np.array([e.normal[1], -e.normal[0], 0.0])
    return -rotate90(plane, x, e.normal)


def unit_normal_at(plane: Plane, e: Geodesic, x: ArrayLike) -> NDArray:
    """Unit tangent vector at a point x of e pointing to e's positive side."""
    if plane.is_euclidean:
        return np.array([e.normal[0], e.normal[1], 0.0])
    return np.asarray(e.normal, float)


def equidistant_point(plane: Plane, e: Geodesic, foot: ArrayLike, s: float) -> Point:
    """Point at signed distance s from e on the perpendicular erected at ``foot``."""
    return exp_map(plane, foot, s * unit_normal_at(plane, e, foot))


def reverse(e: Geodesic) -> Geodesic:
    return Geodesic(normal=-np.asarray(e.normal, float))


# ------------------------------------------------------------
# CIRCLES
# ------------------------------------------------------------

def _check_radius(plane: Plane, r: float) -> float:
    r = float(r)
    if not np.isfinite(r) or r < 0.0:
        raise DomainError(f"radius must be nonnegative, got {r}")
    if plane.is_spherical and r >= np.pi / plane.k:
        raise DomainError(f"spherical radius must be below pi/k, got {r}")
    return r


def circle_perimeter(plane: Plane, r: float) -> float:
    r = _check_radius(plane, r)
    return float(TWO_PI * sigma(plane, r))


def circle_area(plane: Plane, r: float) -> float:
    r = _check_radius(plane, r)
    if plane.is_hyperbolic:
        # 2*pi*(cosh(rk) - 1) written without cancellation
        return float(4.0 * np.pi * np.sinh(plane.k * r / 2.0) ** 2 / plane.k ** 2)
    if plane.is_spherical:
        return float(4.0 * np.pi * np.sin(plane.k * r / 2.0) ** 2 / plane.k ** 2)
    return float(np.pi * r * r)


def sector_area(plane: Plane, r: float, sweep: float) -> float:
    return circle_area(plane, r) * sweep / TWO_PI


def circle_geodesic_curvature(plane: Plane, r: float) -> float:
    r = _check_radius(plane, r)
    if r == 0.0:
        raise InfiniteCurvatureError("a circle of radius 0 has infinite geodesic curvature")
    if plane.is_hyperbolic:
        return float(plane.k / np.tanh(plane.k * r))
    if plane.is_spherical:
        return float(plane.k / np.tan(plane.k * r))
    return 1.0 / r


def turning_per_radian(plane: Plane, r: float) -> float:
    """kappa_g(r) * sigma(r): total geodesic curvature of an arc per radian of central angle."""
    return float(gen_cos(plane, r))


def circle_overlap_interval(plane: Plane, inner: Disk, outer: Disk) -> Optional[Tuple[float, float]]:
    """
    Angular interval of the circle of ``inner`` that lies in the closed disk ``outer``.

    Returns (center_angle, half_width) in the frame of inner's center with half_width in
    [0, pi] (pi means the whole circle), or None when the circle misses ``outer``. Solves the
    law of cosines of the triangle (inner center, outer center, circle point).
    """
    d = float(distance(plane, inner.center, outer.center))
    r_i, r_o = inner.radius, outer.radius
    if d <= EPS_GEO:
        return (0.0, np.pi) if r_i <= r_o + EPS_GEO else None
    theta = float(direction_angle(plane, inner.center, log_map(plane, inner.center, outer.center)))
    if r_i <= EPS_GEO:
        return (theta, np.pi) if d <= r_o + EPS_GEO else None
    if plane.is_hyperbolic:
        k = plane.k
        cos_beta = (np.cosh(k * d) * np.cosh(k * r_i) - np.cosh(k * r_o)) / (np.sinh(k * d) * np.sinh(k * r_i))
    elif plane.is_spherical:
        k = plane.k
        cos_beta = (np.cos(k * r_o) - np.cos(k * d) * np.cos(k * r_i)) / (np.sin(k * d) * np.sin(k * r_i))
    else:
        cos_beta = (d * d + r_i * r_i - r_o * r_o) / (2.0 * d * r_i)
    if cos_beta > 1.0:
        return None
    if cos_beta <= -1.0:
        return theta, np.pi
    return theta, float(np.arccos(cos_beta))


# ------------------------------------------------------------
# OUTER COMMON TANGENTS
# ------------------------------------------------------------

def _tangent_candidates_closed_form(plane: Plane, d1: Disk, d2: Disk):
    p1, p2 = d1.center, d2.center
    s1, s2 = float(sigma(plane, d1.radius)), float(sigma(plane, d2.radius))
    if plane.is_euclidean:
        delta = (p2 - p1)[:2]
        dist = np.linalg.norm(delta)
        e = delta / dist
        f = np.array([-e[1], e[0]])
        along = (s2 - s1) / dist
        across = np.sqrt(max(1.0 - along * along, 0.0))
        normals = []
        for sign in (1.0, -1.0):
            nxy = along * e + sign * across * f
            normals.append(np.array([nxy[0], nxy[1], s1 - nxy @ p1[:2]]))
        return normals
    gram = np.array([[form(plane, p1, p1), form(plane, p1, p2)],
                     [form(plane, p1, p2), form(plane, p2, p2)]])
    alpha, beta = np.linalg.solve(gram, np.array([s1, s2]))
    a = alpha * p1 + beta * p2
    m = np.cross(p1, p2) * _FORM_DIAG[plane.kind]
    t2 = (1.0 - form(plane, a, a)) / form(plane, m, m)
    t = np.sqrt(max(t2, 0.0))
    return [a + t * m, a - t * m]


def tangent_line_at(plane: Plane, disk: Disk, phi: float) -> Tuple[Geodesic, Point]:
    """Line tangent to ``disk`` at frame angle phi, disk on its positive side."""
    direction = direction_from_angle(plane, disk.center, phi)
    foot = exp_map(plane, disk.center, disk.radius * direction)
    outward = outward_velocity(plane, disk.center, direction, disk.radius)
    normal = -outward
    if plane.is_euclidean:
        normal = np.array([normal[0], normal[1], -(normal[0] * foot[0] + normal[1] * foot[1])])
    return Geodesic(normal=normal), foot


def _is_directed(plane: Plane, line: Geodesic, foot1: Point, foot2: Point) -> bool:
    travel = geodesic_direction_at(plane, line, foot1)
    return float(form(plane, travel, log_map(plane, foot1, foot2))) > 0.0


def tangent_by_bisection(plane: Plane, d1: Disk, d2: Disk) -> TangentData:
    """
    Directed outer tangent from d1 to d2 found by root bracketing on the tangency angle at d1.

    Used as the fallback of ``directed_tangent`` and as an independent check of the closed form.
    """
    def residual(phi: float) -> float:
        line, _ = tangent_line_at(plane, d1, phi)
        return float(point_geodesic_distance(plane, d2.center, line)) - d2.radius

    grid = np.linspace(0.0, TWO_PI, TANGENT_BISECTION_GRID + 1)
    values = np.array([residual(phi) for phi in grid])
    candidates = []
    for i in range(TANGENT_BISECTION_GRID):
        lo, hi = values[i], values[i + 1]
        if lo == 0.0:
            candidates.append(grid[i])
        elif lo * hi < 0.0:
            candidates.append(brentq(residual, grid[i], grid[i + 1], xtol=1e-15, rtol=4e-16))
    for phi in candidates:
        line, foot1 = tangent_line_at(plane, d1, phi)
        foot2 = project_to_geodesic(plane, d2.center, line)
        if _is_directed(plane, line, foot1, foot2):
            return TangentData(line=line, foot1=foot1, foot2=foot2)
    raise NoTangentError("no outer common tangent found by bisection")


def _check_tangent_inputs(plane: Plane, d1: Disk, d2: Disk) -> float:
    d = float(distance(plane, d1.center, d2.center))
    if d <= EPS_GEO and abs(d1.radius - d2.radius) <= EPS_GEO:
        raise InfiniteFamilyError("coincident equal disks have infinitely many common tangents")
    if d <= abs(d1.radius - d2.radius) + EPS_GEO:
        raise NoTangentError("one disk contains the other; no outer common tangent")
    return d


def directed_tangent(plane: Plane, d1: Disk, d2: Disk) -> TangentData:
    """
    The outer common tangent travelled from d1's foot to d2's foot with both disks on its left.

    Closed form first; when its tangency residual exceeds the tolerance the bisection search takes over.
    """
    _check_tangent_inputs(plane, d1, d2)
    for normal in _tangent_candidates_closed_form(plane, d1, d2):
        if not plane.is_euclidean:
            size = tangent_norm(plane, normal)
            if size <= 0.0:
                continue
            normal = normal / size
        line = Geodesic(normal=normal)
        foot1 = project_to_geodesic(plane, d1.center, line)
        foot2 = project_to_geodesic(plane, d2.center, line)
        res = max(abs(float(point_geodesic_distance(plane, d1.center, line)) - d1.radius),
                  abs(float(point_geodesic_distance(plane, d2.center, line)) - d2.radius))
        if res <= TANGENT_RESIDUAL_TOL * (1.0 + d1.radius + d2.radius) and _is_directed(plane, line, foot1, foot2):
            return TangentData(line=line, foot1=foot1, foot2=foot2)
    logging.debug("closed-form tangent rejected, falling back to bisection")
    return tangent_by_bisection(plane, d1, d2)


def outer_common_tangents(plane: Plane, d1: Disk, d2: Disk) -> Tuple[TangentData, TangentData]:
    """
    Both outer common tangents of two non-nested disks.

    Each line has the two disks on its positive side; foot1 lies on d1 and foot2 on d2.
    The first tangent is travelled from foot1 to foot2, the second from foot2 to foot1.
    """
    validate_point(plane, d1.center)
    validate_point(plane, d2.center)
    forward = directed_tangent(plane, d1, d2)
    backward = directed_tangent(plane, d2, d1)
    return forward, TangentData(line=backward.line, foot1=backward.foot2, foot2=backward.foot1)


# ------------------------------------------------------------
# ISOMETRIES
# ------------------------------------------------------------

def identity() -> Isometry:
    return Isometry(np.eye(3), True)


def apply(plane: Plane, iso: Isometry, p: ArrayLike) -> Point:
    p = np.asarray(p, float)
    return normalize_point(plane, p @ iso.matrix.T)


def _model_basis(plane: Plane, p: Point, e1: NDArray, e2: NDArray) -> NDArray:
    return np.column_stack([e1, e2, plane.k * p])


def rotate_about(plane: Plane, p: ArrayLike, theta: float) -> Isometry:
    """Rotation by theta (CCW) fixing p."""
    p = validate_point(plane, p)
    c, s = np.cos(theta), np.sin(theta)
    if plane.is_euclidean:
        shift = np.array([[1.0, 0.0, p[0]], [0.0, 1.0, p[1]], [0.0, 0.0, 1.0]])
        back = np.array([[1.0, 0.0, -p[0]], [0.0, 1.0, -p[1]], [0.0, 0.0, 1.0]])
        rot = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
        return Isometry(shift @ rot @ back, True)
    e1, e2 = frame(plane, p)
    basis = _model_basis(plane, p, e1, e2)
    rot = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    return Isometry(basis @ rot @ np.linalg.inv(basis), True)


def point_on_geodesic(plane: Plane, e: Geodesic) -> Point:
    """Foot of the chart origin on e (any point of e when the origin is one of e's poles)."""
    n = np.asarray(e.normal, float)
    if plane.is_spherical and abs(plane.k * n @ plane.origin) > 1.0 - 1e-12:
        axis = np.zeros(3)
        axis[int(np.argmin(np.abs(n)))] = 1.0
        x = np.cross(n, axis)
        return x / (plane.k * np.linalg.norm(x))
    return project_to_geodesic(plane, plane.origin, e)


def translate_along(plane: Plane, e: Geodesic, s: float) -> Isometry:
    """Transvection moving every point of e by arclength s in e's direction."""
    base = point_on_geodesic(plane, e)
    u = geodesic_direction_at(plane, e, base)
    if plane.is_euclidean:
        return Isometry(np.array([[1.0, 0.0, s * u[0]], [0.0, 1.0, s * u[1]], [0.0, 0.0, 1.0]]), True)
    n = unit_normal_at(plane, e, base)
    basis = _model_basis(plane, base, u, n)
    ks = plane.k * s
    if plane.is_hyperbolic:
        boost = np.array([[np.cosh(ks), 0.0, np.sinh(ks)], [0.0, 1.0, 0.0], [np.sinh(ks), 0.0, np.cosh(ks)]])
    else:
        boost = np.array([[np.cos(ks), 0.0, np.sin(ks)], [0.0, 1.0, 0.0], [-np.sin(ks), 0.0, np.cos(ks)]])
    return Isometry(basis @ boost @ np.linalg.inv(basis), True)


def reflect(plane: Plane, e: Geodesic) -> Isometry:
    """Reflection in the geodesic e."""
    n = np.asarray(e.normal, float)
    if plane.is_euclidean:
        nxy = n[:2]
        matrix = np.eye(3)
        matrix[:2, :2] -= 2.0 * np.outer(nxy, nxy)
        matrix[:2, 2] = -2.0 * n[2] * nxy
        return Isometry(matrix, False)
    return Isometry(np.eye(3) - 2.0 * np.outer(n, n * _FORM_DIAG[plane.kind]), False)


def is_isometry(plane: Plane, iso: Isometry, tol: float = 1e-9) -> bool:
    m = iso.matrix
    if plane.is_euclidean:
        block = m[:2, :2]
        return bool(np.allclose(block.T @ block, np.eye(2), atol=tol)
                    and np.allclose(m[2], [0.0, 0.0, 1.0], atol=tol))
    g = np.diag(_FORM_DIAG[plane.kind])
    preserves_sheet = True
    if plane.is_hyperbolic:
        preserves_sheet = bool(m[2, 2] > 0.0)
    return bool(np.allclose(m.T @ g @ m, g, atol=tol * max(1.0, np.abs(m).max() ** 2))) and preserves_sheet


def align_pair(plane: Plane, a: ArrayLike, b: ArrayLike, a_target: ArrayLike, b_target: ArrayLike) -> Isometry:
    """
    Orientation-preserving isometry taking a to a_target and the direction a->b to a_target->b_target.
    """
    a = np.asarray(a, float)
    a_target = np.asarray(a_target, float)
    if plane.is_euclidean:
        move = np.array([[1.0, 0.0, a_target[0] - a[0]], [0.0, 1.0, a_target[1] - a[1]], [0.0, 0.0, 1.0]])
    elif distance(plane, a, a_target) <= EPS_GEO:
        move = np.eye(3)
    else:
        line = geodesic_through(plane, a, a_target)
        move = translate_along(plane, line, float(distance(plane, a, a_target))).matrix
    moved = Isometry(move, True)
    b_moved = apply(plane, moved, b)
    u = log_map(plane, a_target, b_moved)
    w = log_map(plane, a_target, b_target)
    if tangent_norm(plane, u) <= 1e-300 or tangent_norm(plane, w) <= 1e-300:
        return moved
    turn = signed_turn(plane, a_target, u, w)
    return rotate_about(plane, a_target, turn) @ moved


# ------------------------------------------------------------
# CONFORMAL CHARTS: POINCARE DISK AND STEREOGRAPHIC PROJECTION
# ------------------------------------------------------------

def to_poincare(plane: Plane, p: ArrayLike) -> NDArray:
    """Poincare-disk coordinates (unit disk) of hyperboloid point(s)."""
    hat = plane.k * np.asarray(p, float)
    return hat[..., :2] / (1.0 + hat[..., 2:3])


def from_poincare(plane: Plane, z: ArrayLike) -> Point:
    z = np.asarray(z, float)
    s = np.sum(z * z, axis=-1)
    if np.any(s >= 1.0):
        raise DomainError("poincare coordinates must lie in the open unit disk")
    hat = np.concatenate([2.0 * z, (1.0 + s)[..., None]], axis=-1) / (1.0 - s)[..., None]
    return hat / plane.k


def stereographic_project(plane: Plane, pole: ArrayLike, x: ArrayLike) -> NDArray:
    """
    Projection of the sphere minus ``pole`` onto the plane: pole -> infinity, antipode -> origin,
    the equator of the pole -> circle of radius 1/k.
    """
    pole = np.asarray(pole, float)
    w = plane.k * pole
    e1, e2 = frame(plane, pole)
    xh = plane.k * np.asarray(x, float)
    gap = 1.0 - np.sum(xh * w, axis=-1)
    if np.any(gap < POLE_PROXIMITY_TOL):
        raise PoleProximityError("point too close to the projection pole")
    coords = np.stack([np.sum(xh * e1, axis=-1), np.sum(xh * e2, axis=-1)], axis=-1)
    return coords / (plane.k * gap)[..., None]


def stereographic_lift(plane: Plane, pole: ArrayLike, z: ArrayLike) -> Point:
    """Inverse of ``stereographic_project``."""
    pole = np.asarray(pole, float)
    w = plane.k * pole
    e1, e2 = frame(plane, pole)
    u = plane.k * np.asarray(z, float)
    s = np.sum(u * u, axis=-1)[..., None]
    hat = (2.0 * u[..., 0:1] * e1 + 2.0 * u[..., 1:2] * e2 + (s - 1.0) * w) / (s + 1.0)
    return hat / plane.k


def circumcircle_2d(a: ArrayLike, b: ArrayLike, c: ArrayLike) -> Tuple[NDArray, float]:
    """Center and radius of the euclidean circle through three chart points."""
    a, b, c = (np.asarray(v, float)[:2] for v in (a, b, c))
    d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
    if abs(d) < 1e-300:
        raise DegenerateGeodesicError("collinear points have no circumcircle")
    aa, bb, cc = a @ a, b @ b, c @ c
    ux = (aa * (b[1] - c[1]) + bb * (c[1] - a[1]) + cc * (a[1] - b[1])) / d
    uy = (aa * (c[0] - b[0]) + bb * (a[0] - c[0]) + cc * (b[0] - a[0])) / d
    center = np.array([ux, uy])
    return center, float(np.linalg.norm(a - center))


def disk_to_chart_circle(plane: Plane, disk: Disk) -> Tuple[NDArray, float]:
    """Euclidean circle drawn by ``disk`` in its conformal chart (Poincare disk for H^2)."""
    if plane.is_euclidean:
        return disk.center[:2].copy(), disk.radius
    if plane.is_hyperbolic:
        z = to_poincare(plane, disk.center)
        norm = float(np.linalg.norm(z))
        direction = z / norm if norm > 1e-15 else np.array([1.0, 0.0])
        rho = float(distance(plane, plane.origin, disk.center))
        near = np.tanh(plane.k * (rho - disk.radius) / 2.0)
        far = np.tanh(plane.k * (rho + disk.radius) / 2.0)
        return 0.5 * (near + far) * direction, float(0.5 * (far - near))
    raise DomainError("spherical disks have no single chart circle; use disk_to_cap")


def disk_to_cap(plane: Plane, disk: Disk) -> Tuple[NDArray, float]:
    """
    Spherical cap (unit center, angular radius) of the unit sphere corresponding to ``disk``
    under the conformal embeddings H^2 -> E^2 (Poincare disk) -> S^2 (inverse stereographic).
    """
    if plane.is_spherical:
        return plane.k * disk.center, plane.k * disk.radius
    unit_sphere = Plane.spherical(1.0)
    north = np.array([0.0, 0.0, 1.0])
    center, radius = disk_to_chart_circle(plane, disk)
    angles = np.array([0.0, TWO_PI / 3.0, 2.0 * TWO_PI / 3.0])
    ring = center + radius * np.column_stack([np.cos(angles), np.sin(angles)])
    lifted = stereographic_lift(unit_sphere, north, ring)
    normal = np.cross(lifted[1] - lifted[0], lifted[2] - lifted[0])
    normal /= np.linalg.norm(normal)
    height = float(normal @ lifted[0])
    inside = stereographic_lift(unit_sphere, north, center)
    if normal @ inside < height:
        normal, height = -normal, -height
    return normal, float(np.arccos(np.clip(height, -1.0, 1.0)))


def cap_to_chart_circle(cap_center: ArrayLike, cap_radius: float, pole: ArrayLike) -> Tuple[NDArray, float]:
    """Euclidean disk that a unit-sphere cap (not containing ``pole``) projects to."""
    unit_sphere = Plane.spherical(1.0)
    cap_disk = Disk(np.asarray(cap_center, float), cap_radius)
    ring = point_on_circle(unit_sphere, cap_disk, np.array([0.0, TWO_PI / 3.0, 2.0 * TWO_PI / 3.0]))
    chart = stereographic_project(unit_sphere, pole, ring)
    return circumcircle_2d(chart[0], chart[1], chart[2])


# ------------------------------------------------------------
# POLYGON AND SEGMENT AREAS
# ------------------------------------------------------------

def triangle_area(plane: Plane, a: ArrayLike, b: ArrayLike, c: ArrayLike) -> float:
    """Unsigned area of the geodesic triangle abc (angle defect / excess / shoelace)."""
    if plane.is_euclidean:
        u = (np.asarray(b) - np.asarray(a))[:2]
        w = (np.asarray(c) - np.asarray(a))[:2]
        return float(abs(u[0] * w[1] - u[1] * w[0]) / 2.0)
    sides = (distance(plane, a, b), distance(plane, b, c), distance(plane, c, a))
    if min(sides) <= 1e-14:
        return 0.0
    angles = angle_at(plane, a, b, c) + angle_at(plane, b, c, a) + angle_at(plane, c, a, b)
    if plane.is_hyperbolic:
        return float(max(np.pi - angles, 0.0) / plane.k ** 2)
    return float(max(angles - np.pi, 0.0) / plane.k ** 2)


def convex_polygon_area(plane: Plane, vertices) -> float:
    """Area of a convex geodesic polygon by fan triangulation from its first vertex."""
    pts = [np.asarray(v, float) for v in vertices]
    if len(pts) < 3:
        return 0.0
    return float(sum(triangle_area(plane, pts[0], pts[i], pts[i + 1]) for i in range(1, len(pts) - 1)))


def circular_segment_area(plane: Plane, disk: Disk, sweep: float) -> float:
    """Area between an arc of central angle ``sweep`` and its chord."""
    if disk.radius <= 0.0 or sweep <= ANGLE_EPS:
        return 0.0
    sector = sector_area(plane, disk.radius, min(sweep, TWO_PI))
    if sweep >= TWO_PI - ANGLE_EPS:
        return sector
    a = point_on_circle(plane, disk, 0.0)
    b = point_on_circle(plane, disk, sweep)
    tri = triangle_area(plane, disk.center, a, b)
    return float(sector - tri if sweep <= np.pi else sector + tri)


# ------------------------------------------------------------
# SAMPLING
# ------------------------------------------------------------

def sample_ball(plane: Plane, center: ArrayLike, radius: float, count: int, rng: np.random.Generator) -> Point:
    """``count`` points uniform with respect to area in the closed ball B(center, radius)."""
    center = np.asarray(center, float)
    u = rng.random(count)
    theta = TWO_PI * rng.random(count)
    k = plane.k
    if plane.is_hyperbolic:
        rho = np.arccosh(1.0 + u * (np.cosh(k * radius) - 1.0)) / k
    elif plane.is_spherical:
        rho = np.arccos(1.0 - u * (1.0 - np.cos(k * radius))) / k
    else:
        rho = radius * np.sqrt(u)
    directions = direction_from_angle(plane, center, theta)
    return exp_map(plane, center, rho[:, None] * directions)
