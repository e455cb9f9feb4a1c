import json

import numpy as np
import pytest
from hypothesis import strategies as st

from src.entity.geometry_entity import Configuration, Disk, Plane
from src.geometry import kernel
from src.geometry.contraction import random_configuration

PLANE_KINDS = ("hyperbolic", "euclidean", "spherical")


@st.composite
def planes(draw, kinds=PLANE_KINDS):
    kind = draw(st.sampled_from(kinds))
    if kind == "euclidean":
        return Plane.euclidean()
    k = draw(st.sampled_from([0.5, 1.0, 2.0]))
    return Plane.hyperbolic(k) if kind == "hyperbolic" else Plane.spherical(k)


@st.composite
def points(draw, plane, spread=1.5):
    rho = draw(st.floats(0.0, spread / plane.k if not plane.is_euclidean else spread))
    theta = draw(st.floats(0.0, 2.0 * np.pi))
    if plane.is_spherical:
        rho = min(rho, np.pi / (4.0 * plane.k))
    return kernel.point_from_polar(plane, rho, theta)


@st.composite
def configurations(draw, kinds=PLANE_KINDS, min_disks=1, max_disks=5, radius_max=0.8, spread=1.5):
    plane = draw(planes(kinds))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    rng = np.random.default_rng(seed)
    return random_configuration(plane, rng, min_disks, max_disks, radius_max=radius_max, spread=spread)


def euclidean_config(*disks) -> Configuration:
    """Configuration from (x, y, r) triples in the euclidean chart."""
    plane = Plane.euclidean()
    return Configuration(plane, [Disk(kernel.point_from_xy(plane, x, y), r) for x, y, r in disks])


@pytest.fixture
def two_disks() -> Configuration:
    return euclidean_config((0.0, 0.0, 1.0), (3.0, 0.0, 1.0))


@pytest.fixture
def lens() -> Configuration:
    return euclidean_config((0.0, 0.0, 1.0), (1.0, 0.0, 1.0))


@pytest.fixture
def square_of_four() -> Configuration:
    return euclidean_config((2.0, 2.0, 1.0), (-2.0, 2.0, 1.0), (-2.0, -2.0, 1.0), (2.0, -2.0, 1.0))


@pytest.fixture
def scene_file(tmp_path):
    """Writes a scene document and returns its path."""
    def write(document, name="scene.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return str(path)
    return write
