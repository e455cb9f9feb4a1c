import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from src.entity.geometry_entity import Configuration, Disk, Plane
from src.exception import (DegenerateGeodesicError, DomainError,
                           PoleProximityError)
from src.geometry import kernel
from tests.conftest import planes, points

H = Plane.hyperbolic(1.0)
E = Plane.euclidean()


def test_hyperbolic_distance_on_the_x_axis():
    p = np.array([np.sinh(1.0), 0.0, np.cosh(1.0)])
    assert float(kernel.distance(H, p, H.origin)) == pytest.approx(1.0, abs=1e-12)


def test_geodesic_point_splits_distance():
    q = kernel.point_from_polar(H, 2.0, 0.3)
    x = kernel.geodesic_point(H, H.origin, q, 0.25)
    assert float(kernel.distance(H, H.origin, x)) == pytest.approx(0.5, abs=1e-12)
    assert float(kernel.distance(H, x, q)) == pytest.approx(1.5, abs=1e-12)


def test_signed_distance_is_positive_on_the_left():
    axis = kernel.geodesic_through(E, kernel.point_from_xy(E, 0, 0), kernel.point_from_xy(E, 1, 0))
    assert float(kernel.point_geodesic_distance(E, kernel.point_from_xy(E, 0, 3), axis)) == pytest.approx(3.0)
    assert float(kernel.point_geodesic_distance(E, kernel.point_from_xy(E, 0, -3), axis)) == pytest.approx(-3.0)
    flipped = kernel.reverse(axis)
    assert float(kernel.point_geodesic_distance(E, kernel.point_from_xy(E, 0, 3), flipped)) == pytest.approx(-3.0)


def test_circle_measures():
    assert kernel.circle_perimeter(E, 1.0) == pytest.approx(2 * np.pi)
    assert kernel.circle_perimeter(H, 1.0) == pytest.approx(2 * np.pi * np.sinh(1.0))
    assert kernel.circle_area(E, 2.0) == pytest.approx(4 * np.pi)
    assert kernel.circle_area(H, 1.0) == pytest.approx(2 * np.pi * (np.cosh(1.0) - 1.0))
    assert kernel.circle_geodesic_curvature(E, 2.0) == pytest.approx(0.5)
    assert kernel.circle_geodesic_curvature(H, 1.0) == pytest.approx(1.0 / np.tanh(1.0))


def test_spherical_circle_measures():
    S = Plane.spherical(1.0)
    assert kernel.circle_perimeter(S, np.pi / 2) == pytest.approx(2 * np.pi)
    assert kernel.circle_area(S, np.pi / 2) == pytest.approx(2 * np.pi)
    with pytest.raises(DomainError):
        kernel.circle_area(S, np.pi)


def test_invalid_points_are_rejected():
    with pytest.raises(DomainError):
        kernel.validate_point(H, [0.0, 0.0, -1.0])
    with pytest.raises(DomainError):
        kernel.validate_point(Plane.spherical(2.0), [0.0, 0.0, 1.0])
    with pytest.raises(DomainError):
        kernel.validate_point(E, [0.0, 0.0, 2.0])
    with pytest.raises(DomainError):
        Disk(H.origin, -0.5)


def test_geodesic_through_coincident_points_fails():
    with pytest.raises(DegenerateGeodesicError):
        kernel.geodesic_through(H, H.origin, H.origin)


def test_antipodal_points_do_not_determine_a_geodesic():
    S = Plane.spherical(1.0)
    with pytest.raises(DegenerateGeodesicError):
        kernel.geodesic_through(S, S.origin, -S.origin)


def test_outer_tangents_of_equal_euclidean_disks():
    d1 = Disk(kernel.point_from_xy(E, 0, 0), 1.0)
    d2 = Disk(kernel.point_from_xy(E, 3, 0), 1.0)
    first, second = kernel.outer_common_tangents(E, d1, d2)
    feet = sorted([tuple(np.round(first.foot1[:2], 9)), tuple(np.round(second.foot1[:2], 9))])
    assert feet == [(0.0, -1.0), (0.0, 1.0)]
    for tangent in (first, second):
        assert float(kernel.distance(E, tangent.foot1, tangent.foot2)) == pytest.approx(3.0)


def test_hyperbolic_tangents_agree_with_bisection():
    d1 = Disk(H.origin, 0.6)
    d2 = Disk(kernel.point_from_polar(H, 1.5, 0.0), 0.3)
    for a, b in ((d1, d2), (d2, d1)):
        closed = kernel.directed_tangent(H, a, b)
        bracketed = kernel.tangent_by_bisection(H, a, b)
        assert float(kernel.distance(H, closed.foot1, bracketed.foot1)) < 1e-8
        assert float(kernel.distance(H, closed.foot2, bracketed.foot2)) < 1e-8
        assert float(kernel.distance(H, closed.foot1, a.center)) == pytest.approx(a.radius, abs=1e-9)
        assert float(kernel.point_geodesic_distance(H, b.center, closed.line)) == pytest.approx(b.radius, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_exp_inverts_log(data):
    plane = data.draw(planes())
    p = data.draw(points(plane))
    q = data.draw(points(plane))
    back = kernel.exp_map(plane, p, kernel.log_map(plane, p, q))
    assert float(kernel.distance(plane, back, q)) == pytest.approx(0.0, abs=1e-8)
    assert float(kernel.tangent_norm(plane, kernel.log_map(plane, p, q))) == pytest.approx(
        float(kernel.distance(plane, p, q)), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_quarter_turn_keeps_length_and_is_orthogonal(data):
    plane = data.draw(planes())
    p = data.draw(points(plane))
    e1, _ = kernel.frame(plane, p)
    turned = kernel.rotate90(plane, p, e1)
    assert float(kernel.tangent_norm(plane, turned)) == pytest.approx(1.0, abs=1e-9)
    assert float(kernel.form(plane, turned, e1)) == pytest.approx(0.0, abs=1e-9)
    twice = kernel.rotate90(plane, p, turned)
    assert np.allclose(twice, -e1, atol=1e-9)


@settings(max_examples=40, deadline=None)
@given(data=st.data(), theta=st.floats(-3.0, 3.0))
def test_isometries_preserve_distance(data, theta):
    plane = data.draw(planes())
    p, q, c = (data.draw(points(plane)) for _ in range(3))
    iso = kernel.rotate_about(plane, c, theta)
    assert kernel.is_isometry(plane, iso)
    before = float(kernel.distance(plane, p, q))
    after = float(kernel.distance(plane, kernel.apply(plane, iso, p), kernel.apply(plane, iso, q)))
    assert after == pytest.approx(before, abs=1e-8)


@settings(max_examples=40, deadline=None)
@given(data=st.data(), s=st.floats(-1.0, 1.0))
def test_translations_and_reflections_preserve_distance(data, s):
    plane = data.draw(planes())
    a, b, p, q = (data.draw(points(plane)) for _ in range(4))
    assume(float(kernel.distance(plane, a, b)) > 1e-3)
    line = kernel.geodesic_through(plane, a, b)
    before = float(kernel.distance(plane, p, q))
    for iso in (kernel.translate_along(plane, line, s), kernel.reflect(plane, line)):
        assert kernel.is_isometry(plane, iso)
        after = float(kernel.distance(plane, kernel.apply(plane, iso, p), kernel.apply(plane, iso, q)))
        assert after == pytest.approx(before, abs=1e-8)
    moved = kernel.apply(plane, kernel.translate_along(plane, line, s), a)
    assert float(kernel.point_geodesic_distance(plane, moved, line)) == pytest.approx(0.0, abs=1e-8)
    assert float(kernel.distance(plane, a, moved)) == pytest.approx(abs(s), abs=1e-7)


def test_spherical_disks_must_fit_a_hemisphere():
    S = Plane.spherical(2.0)
    Configuration(S, [Disk(S.origin, 0.99 * np.pi / 4)])
    with pytest.raises(DomainError):
        Configuration(S, [Disk(S.origin, 0.1), Disk(S.origin, np.pi / 4)])
    Configuration(H, [Disk(H.origin, 5.0)])


def test_triangle_area_matches_angle_defect():
    a = H.origin
    b = kernel.point_from_polar(H, 1.0, 0.0)
    c = kernel.point_from_polar(H, 1.0, np.pi / 2)
    assert kernel.angle_at(H, a, b, c) == pytest.approx(np.pi / 2)
    angles = kernel.angle_at(H, a, b, c) + kernel.angle_at(H, b, c, a) + kernel.angle_at(H, c, a, b)
    assert kernel.triangle_area(H, a, b, c) == pytest.approx(np.pi - angles, abs=1e-9)


def test_poincare_chart_round_trip():
    z = np.array([0.3, -0.4])
    assert np.allclose(kernel.to_poincare(H, kernel.from_poincare(H, z)), z)
    with pytest.raises(DomainError):
        kernel.from_poincare(H, [0.8, 0.8])


@pytest.mark.parametrize("plane", [H, E, Plane.spherical(1.0)], ids=["hyperbolic", "euclidean", "spherical"])
def test_reflection_fixes_its_geodesic_and_flips_sides(plane):
    a = kernel.point_from_polar(plane, 0.4, 0.2)
    b = kernel.point_from_polar(plane, 0.7, 1.9)
    line = kernel.geodesic_through(plane, a, b)
    mirror = kernel.reflect(plane, line)
    assert kernel.is_isometry(plane, mirror)
    assert not mirror.orientation_preserving

    on_line = kernel.geodesic_point(plane, a, b, 0.3)
    assert np.allclose(kernel.apply(plane, mirror, on_line), on_line, atol=1e-9)

    off = kernel.point_from_polar(plane, 0.5, -1.0)
    image = kernel.apply(plane, mirror, off)
    assert float(kernel.point_geodesic_distance(plane, image, line)) == pytest.approx(
        -float(kernel.point_geodesic_distance(plane, off, line)), abs=1e-9)
    assert np.allclose(kernel.apply(plane, mirror, image), off, atol=1e-9)


def test_stereographic_chart_round_trip():
    sphere = Plane.spherical(2.0)
    pole = -sphere.origin
    x = kernel.point_from_polar(sphere, 0.9, 0.7)
    z = kernel.stereographic_project(sphere, pole, x)
    assert np.allclose(kernel.stereographic_lift(sphere, pole, z), x, atol=1e-12)
    # the antipode of the pole lands on the origin of the chart
    assert np.allclose(kernel.stereographic_project(sphere, pole, sphere.origin), [0.0, 0.0], atol=1e-12)
    with pytest.raises(PoleProximityError):
        kernel.stereographic_project(sphere, pole, pole)


@settings(max_examples=200, deadline=None)
@given(data=st.data(), kind=st.sampled_from(["hyperbolic", "euclidean", "spherical"]),
       depth=st.floats(0.2, 1.0), heading=st.floats(-1.0, 1.0), flip=st.booleans(), theta=st.floats(0.0, 6.0))
def test_distance_to_a_line_along_a_disjoint_geodesic_bends_with_curvature(data, kind, depth, heading, flip, theta):
    plane = data.draw(planes([kind]))
    scale = 1.0 if plane.is_euclidean else 1.0 / plane.k
    s = depth * scale
    foot = plane.origin
    e = kernel.geodesic_from_direction(plane, foot, kernel.direction_from_angle(plane, foot, theta))
    p = kernel.equidistant_point(plane, e, foot, s)
    assert float(kernel.point_geodesic_distance(plane, p, e)) == pytest.approx(s, abs=1e-10)

    # heading -> angle to the line; in the hyperbolic plane |sin| <= tanh(k s) keeps the geodesic off e
    limit = np.tanh(plane.k * s) if plane.is_hyperbolic else 1.0
    phi = np.arcsin(heading * limit) + (np.pi if flip else 0.0)
    away = -kernel.log_map(plane, p, foot) / s
    along = kernel.rotate90(plane, p, away)
    direction = np.cos(phi) * along + np.sin(phi) * away

    h = 1e-3
    t = np.linspace(-s / 2, s / 2, 21)
    delta = [kernel.point_geodesic_distance(plane, kernel.exp_map(plane, p, (t + dt)[:, None] * direction), e)
             for dt in (-h, 0.0, h)]
    second = delta[0] - 2.0 * delta[1] + delta[2]
    assert np.all(delta[1] > 0)
    if plane.is_hyperbolic:
        assert np.all(second >= -1e-8)
    elif plane.is_euclidean:
        assert np.all(np.abs(second) <= 1e-8)
    else:
        assert np.all(second <= 1e-8)
