import sys
from typing import Optional, Tuple

import numpy as np

from src.entity.artifact_entity import (CampaignArtifact, SceneLoadingArtifact,
                                        TrialRecord)
from src.entity.config_entity import AreaVerificationConfig
from src.entity.geometry_entity import Configuration
from src.entity.shape_entity import ContractionPair
from src.exception import DomainError, GeometryException, SamplingError
from src.geometry.contraction import random_configuration, trial_generator
from src.geometry.disk_intersection import intersect_disks, region_area
from src.logger import logging
from src.utils.campaign_utils import (campaign_plane, draw_contraction,
                                      scene_pair, skipped_record,
                                      write_campaign_report)


class AreaVerification:

    def __init__(self, area_verification_config: AreaVerificationConfig,
                 scene_loading_artifact: Optional[SceneLoadingArtifact] = None):
        """
        :param area_verification_config: campaign settings and report paths
        :param scene_loading_artifact: optional scene; without one every trial draws a random system
        """
        try:
            self.area_verification_config = area_verification_config
            self.scene_loading_artifact = scene_loading_artifact
            self.campaign = area_verification_config.campaign
            self.campaign.check()
            if scene_loading_artifact is not None:
                self.plane = scene_loading_artifact.scene.plane
            else:
                self.plane = campaign_plane(self.campaign)
            if self.plane.is_spherical:
                raise DomainError("the area campaign covers the hyperbolic and euclidean planes only")

        except Exception as e:
            raise GeometryException(e, sys) from e

    def _nonempty_system(self, rng: np.random.Generator) -> Configuration:
        """Resamples random systems from the trial stream until their intersection has interior."""
        campaign = self.campaign
        for attempt in range(self.area_verification_config.resample_limit):
            config = random_configuration(self.plane, rng, campaign.min_disks, campaign.max_disks,
                                          campaign.radius_max, campaign.spread)
            if intersect_disks(config).has_interior:
                logging.debug(f"nonempty system after {attempt + 1} draws")
                return config
        raise SamplingError(f"no system with nonempty intersection in "
                            f"{self.area_verification_config.resample_limit} draws")

    def _pair(self, rng: np.random.Generator) -> Tuple[str, ContractionPair]:
        scene = None if self.scene_loading_artifact is None else self.scene_loading_artifact.scene
        if scene is not None and scene.contraction is not None:
            return "scene", scene_pair(scene.contraction)
        base = scene.config if scene is not None else self._nonempty_system(rng)
        return draw_contraction(self.campaign, self.plane, rng, base=base)

    def compare_pair(self, trial: int, generator: str, pair: ContractionPair) -> TrialRecord:
        """
        Method Name :   compare_pair
        Description :   This method compares the intersection areas of one contraction pair. It falls
                        back to the nonemptiness implication when the original intersection has no
                        interior or the contracted one is empty; an empty original passes trivially

        Output      :   TrialRecord of kind area or nonemptiness
        """
        seed = self.campaign.seed
        region_before = intersect_disks(pair.original)
        region_after = intersect_disks(pair.contracted)
        nonempty_before = not region_before.empty_flag
        nonempty_after = not region_after.empty_flag

        if region_before.has_interior and nonempty_after:
            record = TrialRecord.area(trial, seed, region_area(region_before), region_area(region_after),
                                      self.area_verification_config.tolerance, generator=generator)
        else:
            record = TrialRecord.nonemptiness(trial, seed, nonempty_before, nonempty_after,
                                              generator=generator)
            if nonempty_before and not nonempty_after:
                record.note = "contracted intersection is empty"
        if not record.passed:
            logging.error(f"area trial {trial} ({generator}) failed: before {record.before!r}, "
                          f"after {record.after!r} {record.note}")
        return record

    def run_trial(self, trial: int) -> TrialRecord:
        """Draws the pair of one trial from its own stream and compares it."""
        seed = self.campaign.seed
        rng = trial_generator(seed, trial)
        logging.debug(f"area trial {trial}: stream (seed={seed}, trial={trial})")
        try:
            generator, pair = self._pair(rng)
        except SamplingError as e:
            return skipped_record(trial, seed, "area", e)
        return self.compare_pair(trial, generator, pair)

    def initiate_area_verification(self) -> CampaignArtifact:
        """
        Method Name :   initiate_area_verification
        Description :   This method runs every trial of the area campaign and writes its reports

        Output      :   CampaignArtifact
        On Failure  :   Write an exception log and then raise an exception
        """
        logging.info("Entered initiate_area_verification method of AreaVerification class")

        try:
            scene = None if self.scene_loading_artifact is None else self.scene_loading_artifact.scene
            trials = 1 if scene is not None and scene.contraction is not None else self.campaign.trials
            logging.info(f"Area campaign: {trials} trials in the {self.plane.kind.value} plane "
                         f"(k={self.plane.k}), seed {self.campaign.seed}")
            records = [self.run_trial(trial) for trial in range(trials)]

            implications = sum(1 for r in records if r.kind == "area" or (r.kind == "nonemptiness" and r.before > 0))
            header = {"kind": "area", "model": self.plane.kind.value, "curvature": self.plane.k,
                      "seed": self.campaign.seed, "tolerance": self.area_verification_config.tolerance,
                      "radius_max": self.campaign.radius_max, "scene": scene is not None,
                      "nonemptiness_checked": implications}
            campaign_artifact = write_campaign_report(records,
                                                      self.area_verification_config.trials_file_path,
                                                      self.area_verification_config.summary_file_path,
                                                      header)
            logging.info("Exited initiate_area_verification method of AreaVerification class")
            return campaign_artifact

        except Exception as e:
            raise GeometryException(e, sys) from e
