import os
import sys
from dataclasses import replace
from typing import Dict, Optional

from src.components.area_verifier import AreaVerification
from src.components.induction_verifier import InductionVerification
from src.components.perimeter_verifier import PerimeterVerification
from src.components.scene_loader import SceneLoader
from src.components.scene_renderer import SceneRendering
from src.components.shape_reporter import ShapeReporter
from src.constants import (EFFECTIVE_SETTINGS_FILE_NAME,
                           GEOMETRY_CONFIG_FILE_PATH, SCENE_RENDERING_FILE_NAME)
from src.entity.artifact_entity import (CampaignArtifact, InductionArtifact,
                                        RenderArtifact, SceneLoadingArtifact)
from src.entity.config_entity import (CampaignConfig, stage_configs,
                                      verification_pipeline_config)
from src.entity.scene import Scene
from src.exception import GeometryException
from src.logger import logging, set_run_context
from src.utils.main_utils import read_yaml_file, write_yaml_file


def load_settings(file_path: str = GEOMETRY_CONFIG_FILE_PATH) -> Dict:
    """Contents of config/geometry.yaml, or an empty dict when the file is absent."""
    if not os.path.exists(file_path):
        logging.info(f"No settings file at {file_path}, using built-in defaults")
        return {}
    return read_yaml_file(file_path=file_path) or {}


def campaign_from_scene(campaign: CampaignConfig, scene: Scene) -> CampaignConfig:
    """Campaign settings with the plane, seed and trial count taken from a scene."""
    return replace(campaign, model=scene.plane.kind.value, curvature=scene.plane.k, seed=scene.seed,
                   trials=scene.trials, max_disks=max(scene.max_disks, campaign.min_disks))


class VerificationPipeline:

    def __init__(self, artifact_dir: Optional[str] = None, scene_file_path: Optional[str] = None,
                 campaign: Optional[CampaignConfig] = None, settings: Optional[Dict] = None):
        """
        :param artifact_dir: root of the stage folders (default artifact/<timestamp>)
        :param scene_file_path: optional scene; campaigns draw random systems without one
        :param campaign: campaign settings (default: from config/geometry.yaml)
        :param settings: parsed settings file, read from config/geometry.yaml when omitted
        """
        settings = load_settings() if settings is None else settings
        self.artifact_dir = artifact_dir or verification_pipeline_config.artifact_dir
        configs = stage_configs(self.artifact_dir)
        self.campaign = campaign if campaign is not None else CampaignConfig.from_dict(settings)
        set_run_context(model=self.campaign.model, k=self.campaign.curvature, seed=self.campaign.seed)
        self.scene_loading_config = replace(configs["scene"], source_file_path=scene_file_path)
        self.perimeter_verification_config = replace(configs["perimeter"], campaign=self.campaign)
        self.area_verification_config = replace(
            configs["area"], campaign=self.campaign,
            resample_limit=int(settings.get("sampler", {}).get("area_resample_limit",
                                                              configs["area"].resample_limit)))
        self.induction_verification_config = replace(
            configs["induction"], seed=self.campaign.seed,
            indicator_samples=int(settings.get("induction", {}).get("indicator_samples",
                                                                   configs["induction"].indicator_samples)))
        render = settings.get("render", {})
        self.scene_rendering_config = replace(
            configs["render"], canvas_size=int(render.get("canvas_size", configs["render"].canvas_size)),
            arc_samples=int(render.get("arc_samples", configs["render"].arc_samples)))

    def use_campaign(self, campaign: CampaignConfig) -> None:
        campaign.check()
        self.campaign = campaign
        set_run_context(model=campaign.model, k=campaign.curvature, seed=campaign.seed)
        self.perimeter_verification_config.campaign = campaign
        self.area_verification_config.campaign = campaign
        self.induction_verification_config.seed = campaign.seed

    def set_tolerance(self, tolerance: float) -> None:
        self.perimeter_verification_config.tolerance = tolerance
        self.area_verification_config.tolerance = tolerance

    def save_settings(self) -> str:
        """Writes the settings the run actually uses next to the stage folders."""
        settings = self.campaign.to_dict()
        settings["tolerance"] = {"perimeter": float(self.perimeter_verification_config.tolerance),
                                 "area": float(self.area_verification_config.tolerance)}
        settings["sampler"]["area_resample_limit"] = int(self.area_verification_config.resample_limit)
        file_path = os.path.join(self.artifact_dir, EFFECTIVE_SETTINGS_FILE_NAME)
        write_yaml_file(file_path, settings, replace=True)
        logging.info(f"Effective settings written to {file_path}")
        return file_path

    def start_scene_loading(self) -> Optional[SceneLoadingArtifact]:
        """
        This method of VerificationPipeline class is responsible for loading the scene file, if any
        """
        try:
            if self.scene_loading_config.source_file_path is None:
                return None
            logging.info("Entered the start_scene_loading method of VerificationPipeline class")
            scene_loader = SceneLoader(scene_loading_config=self.scene_loading_config)
            scene_loading_artifact = scene_loader.initiate_scene_loading()
            logging.info("Exited the start_scene_loading method of VerificationPipeline class")
            return scene_loading_artifact

        except Exception as e:
            raise GeometryException(e, sys) from e

    def start_perimeter_verification(self, scene_loading_artifact: Optional[SceneLoadingArtifact] = None) -> CampaignArtifact:
        """
        This method of VerificationPipeline class is responsible for the perimeter campaign
        """
        try:
            logging.info("Entered the start_perimeter_verification method of VerificationPipeline class")
            perimeter_verification = PerimeterVerification(
                perimeter_verification_config=self.perimeter_verification_config,
                scene_loading_artifact=scene_loading_artifact)
            campaign_artifact = perimeter_verification.initiate_perimeter_verification()
            logging.info("Exited the start_perimeter_verification method of VerificationPipeline class")
            return campaign_artifact

        except Exception as e:
            raise GeometryException(e, sys) from e

    def start_area_verification(self, scene_loading_artifact: Optional[SceneLoadingArtifact] = None) -> CampaignArtifact:
        """
        This method of VerificationPipeline class is responsible for the area campaign
        """
        try:
            logging.info("Entered the start_area_verification method of VerificationPipeline class")
            area_verification = AreaVerification(area_verification_config=self.area_verification_config,
                                                 scene_loading_artifact=scene_loading_artifact)
            campaign_artifact = area_verification.initiate_area_verification()
            logging.info("Exited the start_area_verification method of VerificationPipeline class")
            return campaign_artifact

        except Exception as e:
            raise GeometryException(e, sys) from e

    def start_induction_verification(self, scene_loading_artifact: SceneLoadingArtifact) -> InductionArtifact:
        """
        This method of VerificationPipeline class is responsible for the decomposition checks
        """
        try:
            induction_verification = InductionVerification(
                induction_verification_config=self.induction_verification_config,
                scene_loading_artifact=scene_loading_artifact)
            return induction_verification.initiate_induction_verification()

        except Exception as e:
            raise GeometryException(e, sys) from e

    def start_scene_rendering(self, scene_loading_artifact: SceneLoadingArtifact, what: str = "hull") -> RenderArtifact:
        """
        This method of VerificationPipeline class is responsible for drawing a construction
        """
        try:
            config = replace(self.scene_rendering_config, what=what)
            default_path = os.path.join(config.scene_rendering_dir, SCENE_RENDERING_FILE_NAME)
            if config.figure_file_path == default_path:
                # one figure per construction in the stage folder
                config.figure_file_path = os.path.join(config.scene_rendering_dir, f"{what}_{SCENE_RENDERING_FILE_NAME}")
            scene_rendering = SceneRendering(scene_rendering_config=config,
                                             scene_loading_artifact=scene_loading_artifact)
            return scene_rendering.initiate_scene_rendering()

        except Exception as e:
            raise GeometryException(e, sys) from e

    def start_shape_report(self, scene_loading_artifact: SceneLoadingArtifact, what: str,
                           file_path: Optional[str] = None) -> Dict:
        """
        This method of VerificationPipeline class is responsible for the hull / intersection / tree reports
        """
        try:
            return ShapeReporter(scene_loading_artifact).initiate_shape_report(what, file_path)

        except Exception as e:
            raise GeometryException(e, sys) from e

    def run_pipeline(self) -> bool:
        """
        This method of VerificationPipeline class runs both campaigns and, for a scene, the
        induction checks and the hull figure; returns True when nothing failed
        """
        try:
            scene_loading_artifact = self.start_scene_loading()
            if scene_loading_artifact is not None:
                self.use_campaign(campaign_from_scene(self.campaign, scene_loading_artifact.scene))
                self.set_tolerance(scene_loading_artifact.scene.tolerance)
            self.save_settings()
            passed = self.start_perimeter_verification(scene_loading_artifact).passed

            plane_kind = (scene_loading_artifact.scene.plane.kind.value if scene_loading_artifact is not None
                          else self.campaign.model)
            if plane_kind != "spherical":
                passed = self.start_area_verification(scene_loading_artifact).passed and passed
            else:
                logging.info("Area campaign skipped on the sphere")

            if scene_loading_artifact is not None:
                passed = self.start_induction_verification(scene_loading_artifact).passed and passed
                self.start_scene_rendering(scene_loading_artifact, "hull")
            logging.info(f"Verification pipeline finished, passed: {passed}")
            return passed

        except Exception as e:
            raise GeometryException(e, sys) from e
