import sys
from typing import Dict, List, Optional

from src.entity.artifact_entity import SceneLoadingArtifact
from src.entity.shape_entity import Arc, BoundaryChain, GeodesicTree
from src.exception import DomainError, GeometryException
from src.geometry.central_set import central_tree
from src.geometry.cocentral_set import cocentral_tree
from src.geometry.disk_hull import hull_boundary, hull_perimeter
from src.geometry.disk_intersection import intersect_disks, region_area
from src.logger import logging
from src.utils.main_utils import write_json_file

SHAPE_TARGETS = ("hull", "intersection", "central", "cocentral")


def _point(p) -> List[float]:
    return [float(v) for v in p]


def chain_document(chain: BoundaryChain) -> List[Dict[str, object]]:
    pieces = []
    for piece in chain.pieces:
        if isinstance(piece, Arc):
            pieces.append({"type": "arc", "disk": int(piece.disk_index),
                           "start_angle": float(piece.start_angle), "end_angle": float(piece.end_angle)})
        else:
            pieces.append({"type": "segment", "start": _point(piece.start), "end": _point(piece.end)})
    return pieces


def tree_document(tree: GeodesicTree) -> Dict[str, object]:
    return {
        "vertices": [{"point": _point(v.point), "radius": float(v.radius),
                      "disk": None if v.disk_index is None else int(v.disk_index)} for v in tree.vertices],
        "edges": [[int(a), int(b)] for a, b in tree.edges],
    }


class ShapeReporter:
    """Computes one construction of a scene and reports it as JSON (model coordinates)."""

    def __init__(self, scene_loading_artifact: SceneLoadingArtifact):
        try:
            self.scene_loading_artifact = scene_loading_artifact
            self.config = scene_loading_artifact.scene.config

        except Exception as e:
            raise GeometryException(e, sys) from e

    def hull_report(self) -> Dict[str, object]:
        chain = hull_boundary(self.config)
        return {"perimeter": hull_perimeter(chain), "hull_disks": [int(i) for i in chain.hull_disk_indices()],
                "pieces": chain_document(chain)}

    def intersection_report(self) -> Dict[str, object]:
        region = intersect_disks(self.config)
        return {"empty": region.empty_flag, "has_interior": region.has_interior,
                "full_disk": None if region.full_disk_index is None else int(region.full_disk_index),
                "area": region_area(region),
                "vertices": [_point(v) for v in region.vertices],
                "witness": None if region.witness is None else _point(region.witness),
                "pieces": chain_document(region.chain)}

    def central_report(self) -> Dict[str, object]:
        return tree_document(central_tree(self.config))

    def cocentral_report(self) -> Dict[str, object]:
        return tree_document(cocentral_tree(intersect_disks(self.config)))

    def initiate_shape_report(self, what: str, file_path: Optional[str] = None) -> Dict[str, object]:
        """
        Method Name :   initiate_shape_report
        Description :   This method builds the hull, intersection, central or co-central report and
                        optionally saves it

        Output      :   report dictionary
        On Failure  :   Write an exception log and then raise an exception
        """
        logging.info(f"Entered initiate_shape_report method of ShapeReporter class ({what})")

        try:
            if what not in SHAPE_TARGETS:
                raise DomainError(f"unknown construction {what!r}; expected one of {SHAPE_TARGETS}")
            plane = self.config.plane
            report = {"construction": what, "model": plane.kind.value, "curvature": plane.k}
            report.update(getattr(self, f"{what}_report")())
            if file_path is not None:
                write_json_file(file_path, report)
            logging.info("Exited initiate_shape_report method of ShapeReporter class")
            return report

        except Exception as e:
            raise GeometryException(e, sys) from e
