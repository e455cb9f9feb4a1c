import json
import math

import pytest

from app import main
from src.components.perimeter_verifier import PerimeterVerification
from src.utils.main_utils import read_json_file, read_records_csv

TWO_DISKS = {"model": "euclidean",
             "disks": [{"center": [0, 0, 1], "radius": 1}, {"center": [3, 0, 1], "radius": 1}]}


def test_hull_command_writes_json(tmp_path, scene_file):
    out = tmp_path / "hull.json"
    assert main(["hull", scene_file(TWO_DISKS), "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["perimeter"] == pytest.approx(2 * math.pi + 6.0)


def test_intersect_command_prints_json(scene_file, capsys):
    lens = {"model": "euclidean",
            "disks": [{"center": [0, 0, 1], "radius": 1}, {"center": [1, 0, 1], "radius": 1}]}
    assert main(["intersect", scene_file(lens)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["area"] == pytest.approx(2 * math.pi / 3 - math.sqrt(3) / 2)


def test_tree_commands(scene_file, capsys):
    path = scene_file(TWO_DISKS)
    assert main(["central-tree", path]) == 0
    assert len(json.loads(capsys.readouterr().out)["edges"]) == 1
    assert main(["cocentral-tree", path]) == 2


def test_perimeter_campaign_is_reproducible(tmp_path):
    args = ["verify-perimeter", "--model", "euclidean", "--trials", "5", "--seed", "9", "--max-disks", "4"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    first = (tmp_path / "a" / "perimeter_verification" / "trials.csv").read_bytes()
    second = (tmp_path / "b" / "perimeter_verification" / "trials.csv").read_bytes()
    assert first == second
    frame = read_records_csv(str(tmp_path / "a" / "perimeter_verification" / "trials.csv"))
    assert len(frame) == 5 and frame["pass"].all()
    summary = read_json_file(str(tmp_path / "a" / "perimeter_verification" / "summary.json"))
    assert summary["model"] == "euclidean" and summary["seed"] == 9


def test_area_campaign(tmp_path):
    args = ["verify-area", "--model", "euclidean", "--trials", "4", "--max-disks", "3", "--out", str(tmp_path)]
    assert main(args) == 0
    summary = read_json_file(str(tmp_path / "area_verification" / "summary.json"))
    assert summary["trials"] == 4 and summary["passed"]


def test_scene_contraction_campaign(tmp_path, scene_file):
    scene = dict(TWO_DISKS, contracted_centers=[[0, 0, 1], [2.5, 0, 1]])
    assert main(["verify-perimeter", scene_file(scene), "--out", str(tmp_path)]) == 0
    frame = read_records_csv(str(tmp_path / "perimeter_verification" / "trials.csv"))
    assert len(frame) == 1 and frame["margin"][0] == pytest.approx(1.0)


def test_a_violation_exits_with_one(tmp_path, monkeypatch):
    monkeypatch.setattr(PerimeterVerification, "measure", staticmethod(lambda pair: (1.0, 2.0)))
    args = ["verify-perimeter", "--model", "hyperbolic", "--trials", "2", "--max-disks", "3", "--out", str(tmp_path)]
    assert main(args) == 1
    summary = read_json_file(str(tmp_path / "perimeter_verification" / "summary.json"))
    assert summary["failure_count"] == 2


def test_induction_command(tmp_path, scene_file):
    assert main(["verify-induction", scene_file(TWO_DISKS), "--out", str(tmp_path)]) == 0
    report = read_json_file(str(tmp_path / "induction_verification" / "induction.json"))
    assert report["passed"] and report["perimeter"]["passed"]


def test_render_command_to_an_svg_file(tmp_path, scene_file):
    figure = tmp_path / "central.svg"
    assert main(["render", scene_file(TWO_DISKS), "--what", "central", "--out", str(figure)]) == 0
    assert "<svg" in figure.read_text()


@pytest.mark.parametrize("args", [
    ["hull", "missing.json"],
    ["verify-area", "--model", "spherical", "--trials", "1"],
    ["verify-perimeter", "--trials", "-1"],
], ids=["missing-scene", "area-on-sphere", "negative-trials"])
def test_input_errors_exit_with_two(tmp_path, args):
    assert main(args + ["--out", str(tmp_path / "out")]) == 2


def test_malformed_scene_exits_with_two(tmp_path, scene_file):
    path = scene_file({"model": "hyperbolic", "disks": [{"center": [0, 0, 3], "radius": 1}]})
    assert main(["verify-induction", path, "--out", str(tmp_path)]) == 2


def test_spherical_scene_outside_a_hemisphere(tmp_path, scene_file):
    axes = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]
    path = scene_file({"model": "spherical", "disks": [{"center": a, "radius": 0.1} for a in axes]})
    assert main(["hull", path]) == 2
