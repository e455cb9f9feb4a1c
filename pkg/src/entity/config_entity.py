import os
from dataclasses import dataclass, field
from datetime import datetime
from typing import Dict, Optional, Tuple

from src.constants import *
from src.exception import DomainError

TIMESTAMP: str = datetime.now().strftime("%m_%d_%Y_%H_%M_%S")


@dataclass
class VerificationPipelineConfig:
    pipeline_name: str = PIPELINE_NAME
    artifact_dir: str = os.path.join(ARTIFACT_DIR, TIMESTAMP)
    timestamp: str = TIMESTAMP


verification_pipeline_config: VerificationPipelineConfig = VerificationPipelineConfig()


@dataclass
class CampaignConfig:
    """Random-instance settings shared by the campaigns; defaults mirror config/geometry.yaml."""
    model: str = "hyperbolic"
    curvature: float = DEFAULT_CURVATURE
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    min_disks: int = DEFAULT_MIN_DISKS
    max_disks: int = DEFAULT_MAX_DISKS
    radius_max: float = DEFAULT_RADIUS_MAX
    spread: float = 2.0
    generator_mix: Tuple[str, ...] = ("radial", "single_point", "composed")
    rejection_budget: int = SINGLE_POINT_MOVE_TRIALS

    @classmethod
    def from_dict(cls, content: Optional[Dict]) -> "CampaignConfig":
        content = dict(content or {})
        campaign = dict(content.get("campaign", {}))
        sampler = dict(content.get("sampler", {}))
        disks = campaign.get("disk_count", [DEFAULT_MIN_DISKS, DEFAULT_MAX_DISKS])
        radii = campaign.get("radius_range", [0.0, DEFAULT_RADIUS_MAX])
        config = cls(model=campaign.get("model", "hyperbolic"),
                     curvature=float(campaign.get("curvature", DEFAULT_CURVATURE)),
                     seed=int(campaign.get("seed", DEFAULT_SEED)),
                     trials=int(campaign.get("trials", DEFAULT_TRIALS)),
                     min_disks=int(disks[0]), max_disks=int(disks[1]),
                     radius_max=float(radii[1]),
                     spread=float(campaign.get("spread", 2.0)),
                     generator_mix=tuple(campaign.get("generator_mix", cls.generator_mix)),
                     rejection_budget=int(sampler.get("rejection_budget", SINGLE_POINT_MOVE_TRIALS)))
        config.check()
        return config

    def to_dict(self) -> Dict:
        """Inverse of ``from_dict``, in the layout of config/geometry.yaml."""
        return {"campaign": {"model": str(self.model), "curvature": float(self.curvature), "seed": int(self.seed),
                             "trials": int(self.trials), "disk_count": [int(self.min_disks), int(self.max_disks)],
                             "radius_range": [0.0, float(self.radius_max)], "spread": float(self.spread),
                             "generator_mix": list(self.generator_mix)},
                "sampler": {"rejection_budget": int(self.rejection_budget)}}

    def check(self) -> None:
        if self.trials < 0:
            raise DomainError(f"trial count must be nonnegative, got {self.trials}")
        if not 1 <= self.min_disks <= self.max_disks:
            raise DomainError(f"bad disk-count range [{self.min_disks}, {self.max_disks}]")
        if self.radius_max < 0:
            raise DomainError(f"radius_max must be nonnegative, got {self.radius_max}")


@dataclass
class SceneLoadingConfig:
    scene_loading_dir: str = os.path.join(verification_pipeline_config.artifact_dir, SCENE_LOADING_DIR_NAME)
    scene_file_path: str = os.path.join(scene_loading_dir, SCENE_LOADING_FILE_NAME)
    source_file_path: Optional[str] = None


@dataclass
class PerimeterVerificationConfig:
    perimeter_verification_dir: str = os.path.join(verification_pipeline_config.artifact_dir, PERIMETER_VERIFICATION_DIR_NAME)
    trials_file_path: str = os.path.join(perimeter_verification_dir, TRIALS_FILE_NAME)
    summary_file_path: str = os.path.join(perimeter_verification_dir, SUMMARY_FILE_NAME)
    tolerance: float = PERIMETER_VERIFICATION_TOLERANCE
    campaign: CampaignConfig = field(default_factory=CampaignConfig)


@dataclass
class AreaVerificationConfig:
    area_verification_dir: str = os.path.join(verification_pipeline_config.artifact_dir, AREA_VERIFICATION_DIR_NAME)
    trials_file_path: str = os.path.join(area_verification_dir, TRIALS_FILE_NAME)
    summary_file_path: str = os.path.join(area_verification_dir, SUMMARY_FILE_NAME)
    tolerance: float = AREA_VERIFICATION_TOLERANCE
    resample_limit: int = AREA_VERIFICATION_RESAMPLE_LIMIT
    campaign: CampaignConfig = field(default_factory=CampaignConfig)


@dataclass
class InductionVerificationConfig:
    induction_verification_dir: str = os.path.join(verification_pipeline_config.artifact_dir, INDUCTION_VERIFICATION_DIR_NAME)
    report_file_path: str = os.path.join(induction_verification_dir, INDUCTION_REPORT_FILE_NAME)
    seed: int = DEFAULT_SEED
    indicator_samples: int = INDUCTION_INDICATOR_SAMPLES


@dataclass
class SceneRenderingConfig:
    scene_rendering_dir: str = os.path.join(verification_pipeline_config.artifact_dir, SCENE_RENDERING_DIR_NAME)
    figure_file_path: str = os.path.join(scene_rendering_dir, SCENE_RENDERING_FILE_NAME)
    what: str = "hull"
    canvas_size: int = SVG_CANVAS_SIZE
    arc_samples: int = SVG_ARC_SAMPLES


def stage_configs(artifact_dir: str) -> Dict[str, object]:
    """Stage configs rooted at ``artifact_dir`` instead of the timestamped default."""
    return {
        "scene": SceneLoadingConfig(
            scene_loading_dir=os.path.join(artifact_dir, SCENE_LOADING_DIR_NAME),
            scene_file_path=os.path.join(artifact_dir, SCENE_LOADING_DIR_NAME, SCENE_LOADING_FILE_NAME)),
        "perimeter": PerimeterVerificationConfig(
            perimeter_verification_dir=os.path.join(artifact_dir, PERIMETER_VERIFICATION_DIR_NAME),
            trials_file_path=os.path.join(artifact_dir, PERIMETER_VERIFICATION_DIR_NAME, TRIALS_FILE_NAME),
            summary_file_path=os.path.join(artifact_dir, PERIMETER_VERIFICATION_DIR_NAME, SUMMARY_FILE_NAME)),
        "area": AreaVerificationConfig(
            area_verification_dir=os.path.join(artifact_dir, AREA_VERIFICATION_DIR_NAME),
            trials_file_path=os.path.join(artifact_dir, AREA_VERIFICATION_DIR_NAME, TRIALS_FILE_NAME),
            summary_file_path=os.path.join(artifact_dir, AREA_VERIFICATION_DIR_NAME, SUMMARY_FILE_NAME)),
        "induction": InductionVerificationConfig(
            induction_verification_dir=os.path.join(artifact_dir, INDUCTION_VERIFICATION_DIR_NAME),
            report_file_path=os.path.join(artifact_dir, INDUCTION_VERIFICATION_DIR_NAME, INDUCTION_REPORT_FILE_NAME)),
        "render": SceneRenderingConfig(
            scene_rendering_dir=os.path.join(artifact_dir, SCENE_RENDERING_DIR_NAME),
            figure_file_path=os.path.join(artifact_dir, SCENE_RENDERING_DIR_NAME, SCENE_RENDERING_FILE_NAME)),
    }
