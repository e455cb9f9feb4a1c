from dataclasses import dataclass, field
from typing import Dict, List, Optional

from src.entity.scene import Scene
from src.entity.shape_entity import (AreaDecompositionReport,
                                     DecompositionReport, DualityReport,
                                     HyperconvexityReport, TwoDiskComparison)


@dataclass
class SceneLoadingArtifact:
    scene_file_path: str
    scene: Scene


@dataclass
class TrialRecord:
    """
    One row of a campaign report; ``kind`` is perimeter, area or nonemptiness.

    A trial passes when its margin is at least -tolerance * (1 + |before|).
    """
    trial: int
    seed: int
    kind: str
    before: float
    after: float
    margin: float
    passed: bool
    generator: str = ""
    note: str = ""

    @classmethod
    def perimeter(cls, trial: int, seed: int, before: float, after: float, tolerance: float, **extra) -> "TrialRecord":
        margin = before - after
        return cls(trial, seed, "perimeter", before, after, margin, margin >= -tolerance * (1.0 + abs(before)), **extra)

    @classmethod
    def area(cls, trial: int, seed: int, before: float, after: float, tolerance: float, **extra) -> "TrialRecord":
        margin = after - before
        return cls(trial, seed, "area", before, after, margin, margin >= -tolerance * (1.0 + abs(before)), **extra)

    @classmethod
    def nonemptiness(cls, trial: int, seed: int, before: bool, after: bool, **extra) -> "TrialRecord":
        margin = float(after) - float(before)
        return cls(trial, seed, "nonemptiness", float(before), float(after), margin, margin >= 0.0, **extra)

    def row(self) -> Dict[str, object]:
        return {"trial": self.trial, "seed": self.seed, "kind": self.kind, "before": self.before,
                "after": self.after, "margin": self.margin, "pass": bool(self.passed)}


@dataclass
class CampaignArtifact:
    trials_file_path: str
    summary_file_path: str
    trial_count: int
    failure_count: int
    min_margin: Optional[float]
    records: List[TrialRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0


@dataclass
class InductionArtifact:
    report_file_path: str
    perimeter_report: Optional[DecompositionReport]
    area_report: Optional[AreaDecompositionReport]
    duality_report: Optional[DualityReport]
    two_disk_reports: List[TwoDiskComparison] = field(default_factory=list)
    hyperconvexity_report: Optional[HyperconvexityReport] = None
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        reports = [r for r in (self.perimeter_report, self.area_report, self.duality_report,
                               self.hyperconvexity_report) if r is not None]
        reports += self.two_disk_reports
        return all(r.passed for r in reports)


@dataclass
class RenderArtifact:
    figure_file_path: str
    what: str
    element_count: int
