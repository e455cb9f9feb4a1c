"""Full-size campaigns; run with ``pytest -m slow``."""
import numpy as np
import pytest

from src.components.area_verifier import AreaVerification
from src.components.perimeter_verifier import PerimeterVerification
from src.entity.config_entity import CampaignConfig, stage_configs
from src.entity.geometry_entity import Plane
from src.geometry import kernel
from src.geometry.contraction import random_configuration, trial_generator
from src.geometry.disk_hull import hull_boundary, hull_perimeter
from src.geometry.disk_intersection import intersect_disks, region_area
from src.geometry.oracles import (intersection_indicator, monte_carlo_area,
                                  polygonal_perimeter)

PLANES = [Plane.hyperbolic(1.0), Plane.euclidean(), Plane.spherical(1.0)]
PLANE_IDS = ["hyperbolic", "euclidean", "spherical"]


@pytest.mark.slow
@pytest.mark.parametrize("model", PLANE_IDS)
def test_ten_thousand_perimeter_trials(tmp_path, model):
    configs = stage_configs(str(tmp_path))
    configs["perimeter"].campaign = CampaignConfig(model=model, trials=10_000, seed=2024)
    result = PerimeterVerification(configs["perimeter"]).initiate_perimeter_verification()
    assert result.trial_count == 10_000
    assert result.passed, f"{result.failure_count} failures, worst margin {result.min_margin}"


@pytest.mark.slow
@pytest.mark.parametrize("model", PLANE_IDS[:2])
def test_ten_thousand_area_trials(tmp_path, model):
    configs = stage_configs(str(tmp_path))
    configs["area"].campaign = CampaignConfig(model=model, trials=10_000, seed=2024)
    result = AreaVerification(configs["area"]).initiate_area_verification()
    assert result.trial_count == 10_000
    assert result.passed, f"{result.failure_count} failures, worst margin {result.min_margin}"
    assert {record.kind for record in result.records} <= {"area", "nonemptiness"}


@pytest.mark.slow
@pytest.mark.parametrize("plane", PLANES, ids=PLANE_IDS)
def test_polygonal_perimeters_of_random_hulls(plane):
    for trial in range(200):
        chain = hull_boundary(random_configuration(plane, trial_generator(77, trial)))
        exact = hull_perimeter(chain)
        assert abs(polygonal_perimeter(chain, 100_000) - exact) <= 1e-5 * exact, f"trial {trial}"


@pytest.mark.slow
@pytest.mark.parametrize("plane", PLANES, ids=PLANE_IDS)
def test_monte_carlo_areas_of_random_intersections(plane):
    within, trial = 0, 0
    regions = 0
    while regions < 100:
        config = random_configuration(plane, trial_generator(91, trial), 2, 6, radius_max=1.0, spread=0.3)
        trial += 1
        region = intersect_disks(config)
        if not region.has_interior:
            continue
        smallest = config.disks[int(np.argmin(config.radii))]
        exact = region_area(region)
        # keep regions that cover a fair share of their sampling ball
        if exact < 0.01 * kernel.circle_area(plane, smallest.radius):
            continue
        estimate, error = monte_carlo_area(plane, intersection_indicator(region), smallest.center,
                                           smallest.radius, samples=1_000_000, seed=trial, shards=4)
        within += abs(estimate - exact) <= 3.0 * error
        regions += 1
    assert within >= 97
