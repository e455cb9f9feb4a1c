import numpy as np
import pytest

from src.entity.scene import Scene
from src.exception import SceneParseError
from src.geometry import kernel


def test_model_coordinates_round_trip():
    document = {"model": "hyperbolic", "curvature": 1.0,
                "disks": [{"center": [0.0, 0.0, 1.0], "radius": 0.5},
                          {"center": [np.sinh(1.0), 0.0, np.cosh(1.0)], "radius": 0.2}],
                "seed": 3, "trials": 7, "label": "kept"}
    scene = Scene.from_dict(document)
    assert len(scene.config) == 2 and scene.seed == 3 and scene.trials == 7
    assert scene.contraction is None
    again = scene.to_dict()
    assert again["label"] == "kept"
    assert again["disks"][1]["center"] == pytest.approx(document["disks"][1]["center"])


def test_poincare_disk_coordinates():
    scene = Scene.from_dict({"model": "hyperbolic", "coordinates": "poincare",
                             "disks": [{"center": [0.5, 0.0], "radius": 0.1}]})
    center = scene.config.disks[0].center
    assert float(kernel.distance(scene.plane, center, scene.plane.origin)) == pytest.approx(2 * np.arctanh(0.5))
    assert scene.to_dict()["disks"][0]["center"] == pytest.approx([0.5, 0.0])


def test_spherical_chart_coordinates_round_trip():
    scene = Scene.from_dict({"model": "spherical", "curvature": 2.0, "coordinates": "poincare",
                             "disks": [{"center": [0.3, 0.2], "radius": 0.1}]})
    center = scene.config.disks[0].center
    assert float(np.linalg.norm(center)) == pytest.approx(0.5)
    assert scene.to_dict()["disks"][0]["center"] == pytest.approx([0.3, 0.2])


def test_contracted_centers_make_a_pair():
    scene = Scene.from_dict({"model": "euclidean",
                             "disks": [{"center": [0, 0, 1], "radius": 1}, {"center": [3, 0, 1], "radius": 1}],
                             "contracted_centers": [[0, 0, 1], [2, 0, 1]]})
    pair = scene.contraction
    assert pair is not None
    assert pair.contracted.centers[1].tolist() == [2.0, 0.0, 1.0]
    assert pair.contracted.radii.tolist() == [1.0, 1.0]


@pytest.mark.parametrize("document", [
    [],
    {"model": "hyperbolic"},
    {"model": "elliptic", "disks": [{"center": [0, 0, 1], "radius": 1}]},
    {"model": "hyperbolic", "curvature": -1, "disks": [{"center": [0, 0, 1], "radius": 1}]},
    {"model": "hyperbolic", "disks": [{"center": [0, 0, 2], "radius": 1}]},
    {"model": "hyperbolic", "disks": [{"center": [0, 0, 1], "radius": -1}]},
    {"model": "hyperbolic", "disks": [{"center": [0, 0, 1]}]},
    {"model": "hyperbolic", "coordinates": "poincare", "disks": [{"center": [0.9, 0.9], "radius": 0.1}]},
    {"model": "hyperbolic", "coordinates": "klein", "disks": [{"center": [0, 0, 1], "radius": 1}]},
    {"model": "euclidean", "disks": [{"center": [0, 0, 1], "radius": 1}], "contracted_centers": []},
    {"model": "euclidean", "disks": [{"center": [0, 0, 1], "radius": 1}], "trials": "many"},
], ids=["not-object", "no-disks", "bad-model", "bad-curvature", "off-surface", "negative-radius",
        "no-radius", "outside-unit-disk", "bad-convention", "contracted-count", "bad-trials"])
def test_malformed_scenes_are_rejected(document):
    with pytest.raises(SceneParseError):
        Scene.from_dict(document)
