import sys
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.constants import TRIAL_COLUMNS
from src.entity.artifact_entity import CampaignArtifact, TrialRecord
from src.entity.config_entity import CampaignConfig
from src.entity.geometry_entity import Configuration, Plane
from src.entity.shape_entity import ContractionPair
from src.exception import DomainError, GeometryException
from src.geometry.contraction import (CONTRACTION_KINDS, is_contraction,
                                      random_configuration,
                                      random_contraction)
from src.logger import logging
from src.utils.main_utils import write_json_file, write_records_csv


def campaign_plane(campaign: CampaignConfig) -> Plane:
    """Plane described by the campaign's model name and curvature."""
    return Plane(campaign.model, campaign.curvature)


def available_kinds(plane: Plane, mix: Sequence[str]) -> List[str]:
    """Generators of the mix that are valid in ``plane``, in the mix's order."""
    unknown = [kind for kind in mix if kind not in CONTRACTION_KINDS]
    if unknown:
        raise DomainError(f"unknown contraction generators {unknown}; expected {CONTRACTION_KINDS}")
    kinds = [kind for kind in mix if not (plane.is_spherical and kind == "radial")]
    if not kinds:
        raise DomainError(f"no generator of {list(mix)} is valid in the {plane.kind.value} plane")
    return kinds


def draw_contraction(campaign: CampaignConfig, plane: Plane, rng: np.random.Generator,
                     base: Optional[Configuration] = None) -> Tuple[str, ContractionPair]:
    """
    One random contraction pair from a trial stream.

    With ``base`` the scene's system is contracted, otherwise a fresh system is drawn first.
    """
    config = base if base is not None else random_configuration(
        plane, rng, campaign.min_disks, campaign.max_disks, campaign.radius_max, campaign.spread)
    kinds = available_kinds(plane, campaign.generator_mix)
    kind = kinds[int(rng.integers(len(kinds)))]
    kind, contracted = random_contraction(config, rng, kind, campaign.rejection_budget)
    return kind, ContractionPair(config, contracted)


def scene_pair(pair: ContractionPair) -> ContractionPair:
    """Checks a contraction given verbatim in a scene file."""
    report = is_contraction(pair)
    if not report.is_contraction:
        raise DomainError(f"scene's contracted centers grow the distance of pair {report.worst_pair} "
                          f"by {report.max_violation:.3e}")
    return pair


def skipped_record(trial: int, seed: int, kind: str, error: Exception) -> TrialRecord:
    """Explicit record of a trial whose instance could not be generated."""
    logging.warning(f"trial {trial} skipped: {error}")
    return TrialRecord(trial, seed, kind, float("nan"), float("nan"), float("nan"), True,
                       generator="skipped", note=str(error))


def write_campaign_report(records: List[TrialRecord], trials_file_path: str, summary_file_path: str,
                          header: Dict[str, object]) -> CampaignArtifact:
    """
    Method Name :   write_campaign_report
    Description :   writes trials CSV (sorted by trial id) and the JSON summary with minimum margin,
                    failure list, per-kind counts, worst trial and skips

    Output      :   CampaignArtifact
    On Failure  :   Write an exception log and then raise an exception
    """
    try:
        records = sorted(records, key=lambda r: (r.trial, r.kind))
        write_records_csv(trials_file_path, [r.row() for r in records], TRIAL_COLUMNS)

        checked = [r for r in records if r.generator != "skipped"]
        failures = [r for r in checked if not r.passed]
        margins = [r.margin for r in checked if r.kind != "nonemptiness"]
        min_margin = float(min(margins)) if margins else None
        worst = min((r for r in checked if r.kind != "nonemptiness"), key=lambda r: r.margin, default=None)
        counts: Dict[str, int] = {}
        for r in records:
            counts[r.kind] = counts.get(r.kind, 0) + 1

        summary = dict(header)
        summary.update({
            "trials": len(records),
            "min_margin": min_margin,
            "failure_count": len(failures),
            "failures": [{"trial": r.trial, "kind": r.kind, "margin": r.margin, "generator": r.generator}
                         for r in failures],
            "counts": counts,
            "worst_trial": None if worst is None else {"trial": worst.trial, "margin": worst.margin,
                                                         "before": worst.before, "after": worst.after},
            "skipped": [{"trial": r.trial, "reason": r.note} for r in records if r.generator == "skipped"],
            "passed": not failures,
        })
        write_json_file(summary_file_path, summary)
        logging.info(f"Campaign summary: {len(records)} trials, {len(failures)} failures, min margin {min_margin}")
        return CampaignArtifact(trials_file_path=trials_file_path, summary_file_path=summary_file_path,
                                trial_count=len(records), failure_count=len(failures),
                                min_margin=min_margin, records=records)

    except Exception as e:
        raise GeometryException(e, sys) from e

