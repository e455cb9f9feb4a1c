import sys
from dataclasses import asdict
from itertools import combinations
from typing import List, Optional

import numpy as np

from src.constants import EPS_GEO
from src.entity.artifact_entity import InductionArtifact, SceneLoadingArtifact
from src.entity.config_entity import InductionVerificationConfig
from src.entity.geometry_entity import Configuration, Disk
from src.entity.shape_entity import (AreaDecompositionReport,
                                     DecompositionReport, DualityReport,
                                     HyperconvexityReport, TwoDiskComparison)
from src.exception import (GeometryException, PoleProximityError,
                           TreeStructureError)
from src.geometry import kernel
from src.geometry.central_set import sharpen, tree_decomposition_check
from src.geometry.cocentral_set import (cocentral_sharpen, duality_check,
                                        hyperconvexity_check,
                                        intersection_decomposition_check)
from src.geometry.disk_hull import two_disk_comparison
from src.geometry.disk_intersection import intersect_disks
from src.logger import logging
from src.utils.main_utils import write_json_file


def _finite(record: dict) -> dict:
    return {key: None if isinstance(value, float) and np.isnan(value) else value for key, value in record.items()}


class InductionVerification:

    def __init__(self, induction_verification_config: InductionVerificationConfig,
                 scene_loading_artifact: SceneLoadingArtifact):
        """
        :param induction_verification_config: sampling settings and report path
        :param scene_loading_artifact: the scene whose system is split
        """
        try:
            self.induction_verification_config = induction_verification_config
            self.scene_loading_artifact = scene_loading_artifact

        except Exception as e:
            raise GeometryException(e, sys) from e

    def check_hull_split(self, config: Configuration, notes: List[str]) -> Optional[DecompositionReport]:
        """
        Method Name :   check_hull_split
        Description :   This method sharpens the system and checks the hull decomposition at a leaf
                        of its central tree

        Output      :   DecompositionReport, or None when the hull is a single circle
        On Failure  :   Write an exception log and then raise an exception
        """
        sharpened = sharpen(config)
        try:
            return tree_decomposition_check(sharpened, seed=self.induction_verification_config.seed,
                                            samples=self.induction_verification_config.indicator_samples)
        except TreeStructureError:
            if len(sharpened) == 1:
                notes.append("hull is a single disk: nothing to split")
                return None
            raise

    def check_intersection_split(self, config: Configuration, notes: List[str]) -> Optional[AreaDecompositionReport]:
        """
        Method Name :   check_intersection_split
        Description :   This method sharpens the system against its intersection and checks the area
                        identity at a leaf of the co-central tree

        Output      :   AreaDecompositionReport, or None when the intersection has no interior or
                        is a single disk
        On Failure  :   Write an exception log and then raise an exception
        """
        if not intersect_disks(config).has_interior:
            notes.append("intersection has no interior: area identity not applicable")
            return None
        sharpened = cocentral_sharpen(config)
        try:
            return intersection_decomposition_check(sharpened)
        except TreeStructureError:
            if intersect_disks(sharpened).full_disk_flag:
                notes.append("intersection is a single disk: nothing to split")
                return None
            raise

    def check_duality(self, config: Configuration, notes: List[str]) -> Optional[DualityReport]:
        """Co-central tree against the dual central set; skipped for empty or degenerate intersections."""
        region = intersect_disks(config)
        if not region.has_interior:
            return None
        try:
            return duality_check(region, config)
        except PoleProximityError as e:
            notes.append(f"duality check skipped: {e}")
            return None

    def check_hyperconvexity(self, config: Configuration, notes: List[str]) -> Optional[HyperconvexityReport]:
        """Spindles of point pairs of the intersection stay inside it; skipped when it is empty."""
        region = intersect_disks(config)
        if region.empty_flag:
            notes.append("intersection is empty: hyperconvexity not applicable")
            return None
        return hyperconvexity_check(region, rng=np.random.default_rng(self.induction_verification_config.seed))

    def check_two_disk_pairs(self, config: Configuration) -> List[TwoDiskComparison]:
        """
        Method Name :   check_two_disk_pairs
        Description :   This method pulls the second disk of every pair toward the first by a random
                        fraction and compares tangent feet and angles before and after

        Output      :   one TwoDiskComparison per pair with distinct centers
        On Failure  :   Write an exception log and then raise an exception
        """
        plane = config.plane
        rng = np.random.default_rng(self.induction_verification_config.seed)
        comparisons = []
        for i, j in combinations(range(len(config)), 2):
            d1, d2 = config.disks[i], config.disks[j]
            if float(kernel.distance(plane, d1.center, d2.center)) <= EPS_GEO:
                continue
            pulled = Disk(kernel.geodesic_point(plane, d1.center, d2.center, float(rng.uniform(0.05, 0.95))), d2.radius)
            comparisons.append(two_disk_comparison(plane, (d1, d2), (d1, pulled)))
        failed = sum(not c.passed for c in comparisons)
        logging.info(f"Two-disk comparison on {len(comparisons)} pairs, {failed} failed")
        return comparisons

    def initiate_induction_verification(self) -> InductionArtifact:
        """
        Method Name :   initiate_induction_verification
        Description :   This method runs both decomposition checks, the duality check, the two-disk
                        comparisons and the hyperconvexity check on the scene's system and writes
                        the JSON report

        Output      :   InductionArtifact
        On Failure  :   Write an exception log and then raise an exception
        """
        logging.info("Entered initiate_induction_verification method of InductionVerification class")

        try:
            config = self.scene_loading_artifact.scene.config
            notes: List[str] = []
            hull_report = self.check_hull_split(config, notes)
            area_report = None if config.plane.is_spherical else self.check_intersection_split(config, notes)
            duality_report = self.check_duality(config, notes)
            pair_reports = self.check_two_disk_pairs(config)
            spindle_report = self.check_hyperconvexity(config, notes)
            if config.plane.is_spherical:
                notes.append("area identity not checked on the sphere")

            artifact = InductionArtifact(report_file_path=self.induction_verification_config.report_file_path,
                                         perimeter_report=hull_report, area_report=area_report,
                                         duality_report=duality_report, two_disk_reports=pair_reports,
                                         hyperconvexity_report=spindle_report, notes=notes)
            write_json_file(artifact.report_file_path, {
                "model": config.plane.kind.value,
                "curvature": config.plane.k,
                "disks": len(config),
                "perimeter": None if hull_report is None else asdict(hull_report),
                "area": None if area_report is None else asdict(area_report),
                "duality": None if duality_report is None else asdict(duality_report),
                "two_disk": [_finite(asdict(c)) for c in pair_reports],
                "hyperconvexity": None if spindle_report is None else asdict(spindle_report),
                "notes": notes,
                "passed": artifact.passed,
            })
            logging.info(f"Induction checks passed: {artifact.passed}; notes: {notes}")
            logging.info("Exited initiate_induction_verification method of InductionVerification class")
            return artifact

        except Exception as e:
            raise GeometryException(e, sys) from e
