import sys
from typing import Optional

from src.entity.artifact_entity import (CampaignArtifact, SceneLoadingArtifact,
                                        TrialRecord)
from src.entity.config_entity import PerimeterVerificationConfig
from src.entity.shape_entity import ContractionPair
from src.exception import GeometryException, SamplingError
from src.geometry.contraction import trial_generator
from src.geometry.disk_hull import hull_boundary, hull_perimeter
from src.logger import logging
from src.utils.campaign_utils import (campaign_plane, draw_contraction,
                                      scene_pair, skipped_record,
                                      write_campaign_report)


class PerimeterVerification:

    def __init__(self, perimeter_verification_config: PerimeterVerificationConfig,
                 scene_loading_artifact: Optional[SceneLoadingArtifact] = None):
        """
        :param perimeter_verification_config: campaign settings and report paths
        :param scene_loading_artifact: optional scene; without one every trial draws a random system
        """
        try:
            self.perimeter_verification_config = perimeter_verification_config
            self.scene_loading_artifact = scene_loading_artifact
            self.campaign = perimeter_verification_config.campaign
            self.campaign.check()
            if scene_loading_artifact is not None:
                self.plane = scene_loading_artifact.scene.plane
            else:
                self.plane = campaign_plane(self.campaign)

        except Exception as e:
            raise GeometryException(e, sys) from e

    @staticmethod
    def measure(pair: ContractionPair) -> tuple:
        """Hull perimeters of the original and of the contracted system."""
        before = hull_perimeter(hull_boundary(pair.original))
        after = hull_perimeter(hull_boundary(pair.contracted))
        return before, after

    def run_trial(self, trial: int) -> TrialRecord:
        """
        Method Name :   run_trial
        Description :   This method builds the contraction pair of one trial from its own random
                        stream and compares hull perimeters

        Output      :   TrialRecord of kind perimeter
        On Failure  :   Write an exception log and then raise an exception
        """
        seed = self.campaign.seed
        tolerance = self.perimeter_verification_config.tolerance
        scene = None if self.scene_loading_artifact is None else self.scene_loading_artifact.scene
        rng = trial_generator(seed, trial)
        logging.debug(f"perimeter trial {trial}: stream (seed={seed}, trial={trial})")

        if scene is not None and scene.contraction is not None:
            generator, pair = "scene", scene_pair(scene.contraction)
        else:
            try:
                generator, pair = draw_contraction(self.campaign, self.plane, rng,
                                                   base=None if scene is None else scene.config)
            except SamplingError as e:
                return skipped_record(trial, seed, "perimeter", e)

        before, after = self.measure(pair)
        record = TrialRecord.perimeter(trial, seed, before, after, tolerance, generator=generator)
        if not record.passed:
            logging.error(f"perimeter trial {trial} ({generator}) grew the hull: before {before!r}, after {after!r}")
        return record

    def initiate_perimeter_verification(self) -> CampaignArtifact:
        """
        Method Name :   initiate_perimeter_verification
        Description :   This method runs every trial of the perimeter campaign and writes its reports

        Output      :   CampaignArtifact
        On Failure  :   Write an exception log and then raise an exception
        """
        logging.info("Entered initiate_perimeter_verification method of PerimeterVerification class")

        try:
            scene = None if self.scene_loading_artifact is None else self.scene_loading_artifact.scene
            trials = 1 if scene is not None and scene.contraction is not None else self.campaign.trials
            logging.info(f"Perimeter campaign: {trials} trials in the {self.plane.kind.value} plane "
                         f"(k={self.plane.k}), seed {self.campaign.seed}")
            records = [self.run_trial(trial) for trial in range(trials)]

            header = {"kind": "perimeter", "model": self.plane.kind.value, "curvature": self.plane.k,
                      "seed": self.campaign.seed, "tolerance": self.perimeter_verification_config.tolerance,
                      "radius_max": self.campaign.radius_max, "scene": scene is not None}
            campaign_artifact = write_campaign_report(records,
                                                      self.perimeter_verification_config.trials_file_path,
                                                      self.perimeter_verification_config.summary_file_path,
                                                      header)
            logging.info("Exited initiate_perimeter_verification method of PerimeterVerification class")
            return campaign_artifact

        except Exception as e:
            raise GeometryException(e, sys) from e
