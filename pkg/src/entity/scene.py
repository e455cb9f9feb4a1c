"""
Scene files: the JSON description of a disk system (and optionally its contraction).

    {
      "model": "hyperbolic" | "euclidean" | "spherical",
      "curvature": 1.0,
      "coordinates": "model" | "poincare",
      "disks": [{"center": [...], "radius": 0.5}, ...],
      "contracted_centers": [[...], ...],        optional
      "seed": 20240611, "trials": 100, "max_disks": 8, "tolerance": 1e-7
    }

"model" coordinates are points of the linear model (3 numbers). "poincare" coordinates
are 2 numbers: the Poincare disk for H^2, the affine chart for E^2 and the stereographic
chart centered at the north pole for S^2.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from src.constants import (DEFAULT_MAX_DISKS, DEFAULT_SEED, DEFAULT_TRIALS,
                           PERIMETER_VERIFICATION_TOLERANCE)
from src.entity.geometry_entity import Configuration, Disk, ModelKind, Plane, Point
from src.entity.shape_entity import ContractionPair
from src.exception import DomainError, SceneParseError
from src.geometry import kernel

COORDINATE_CONVENTIONS = ("model", "poincare")


def _south_pole(plane: Plane) -> Point:
    return -plane.origin


def _from_chart(plane: Plane, coords: List[float]) -> Point:
    z = np.asarray(coords, float)
    if z.shape != (2,):
        raise SceneParseError(f"poincare coordinates need 2 numbers, got {coords!r}")
    if plane.is_hyperbolic:
        return kernel.from_poincare(plane, z)
    if plane.is_euclidean:
        return np.array([z[0], z[1], 1.0])
    return kernel.stereographic_lift(plane, _south_pole(plane), z)


def _to_chart(plane: Plane, p: Point) -> List[float]:
    if plane.is_hyperbolic:
        z = kernel.to_poincare(plane, p)
    elif plane.is_euclidean:
        z = np.asarray(p, float)[:2]
    else:
        z = kernel.stereographic_project(plane, _south_pole(plane), p)
    return [float(v) for v in z]


@dataclass(eq=False)
class Scene:
    config: Configuration
    contracted_centers: Optional[np.ndarray] = None
    coordinates: str = "model"
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    max_disks: int = DEFAULT_MAX_DISKS
    tolerance: float = PERIMETER_VERIFICATION_TOLERANCE
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def plane(self) -> Plane:
        return self.config.plane

    @property
    def contraction(self) -> Optional[ContractionPair]:
        if self.contracted_centers is None:
            return None
        return ContractionPair(self.config, self.config.with_centers(self.contracted_centers))

    # ------------------------------------------------------------
    # PARSING
    # ------------------------------------------------------------

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Scene":
        """Validates a decoded scene document; every failure is a SceneParseError."""
        if not isinstance(data, dict):
            raise SceneParseError("scene document must be a JSON object")
        try:
            plane = Plane(ModelKind(data.get("model", "hyperbolic")), float(data.get("curvature", 1.0)))
        except (ValueError, DomainError) as e:
            raise SceneParseError(f"bad plane description: {e}") from e
        convention = data.get("coordinates", "model")
        if convention not in COORDINATE_CONVENTIONS:
            raise SceneParseError(f"coordinates must be one of {COORDINATE_CONVENTIONS}, got {convention!r}")
        raw_disks = data.get("disks")
        if not isinstance(raw_disks, list) or not raw_disks:
            raise SceneParseError("scene needs a nonempty 'disks' list")

        def point(coords) -> Point:
            try:
                if convention == "poincare":
                    return kernel.validate_point(plane, _from_chart(plane, coords))
                return kernel.validate_point(plane, np.asarray(coords, float))
            except (TypeError, ValueError, DomainError) as e:
                raise SceneParseError(f"bad center {coords!r}: {e}") from e

        disks = []
        for entry in raw_disks:
            if not isinstance(entry, dict) or "center" not in entry or "radius" not in entry:
                raise SceneParseError(f"disk entries need 'center' and 'radius': {entry!r}")
            try:
                disks.append(Disk(point(entry["center"]), float(entry["radius"])))
            except (TypeError, ValueError, DomainError) as e:
                raise SceneParseError(f"bad disk {entry!r}: {e}") from e
        contracted = data.get("contracted_centers")
        if contracted is not None:
            if not isinstance(contracted, list) or len(contracted) != len(disks):
                raise SceneParseError("'contracted_centers' must list one center per disk")
            contracted = np.array([point(c) for c in contracted])
        known = {"model", "curvature", "coordinates", "disks", "contracted_centers",
                 "seed", "trials", "max_disks", "tolerance"}
        try:
            return cls(config=Configuration(plane, disks), contracted_centers=contracted,
                       coordinates=convention, seed=int(data.get("seed", DEFAULT_SEED)),
                       trials=int(data.get("trials", DEFAULT_TRIALS)),
                       max_disks=int(data.get("max_disks", DEFAULT_MAX_DISKS)),
                       tolerance=float(data.get("tolerance", PERIMETER_VERIFICATION_TOLERANCE)),
                       extra={k: v for k, v in data.items() if k not in known})
        except (TypeError, ValueError) as e:
            raise SceneParseError(f"bad scene parameter: {e}") from e

    def to_dict(self) -> Dict[str, Any]:
        """Inverse of ``from_dict`` in the scene's own coordinate convention."""
        plane = self.plane

        def coords(p: Point) -> List[float]:
            if self.coordinates == "poincare":
                return _to_chart(plane, p)
            return [float(v) for v in p]

        data: Dict[str, Any] = {
            "model": plane.kind.value,
            "curvature": plane.k,
            "coordinates": self.coordinates,
            "disks": [{"center": coords(d.center), "radius": d.radius} for d in self.config.disks],
            "seed": self.seed,
            "trials": self.trials,
            "max_disks": self.max_disks,
            "tolerance": self.tolerance,
        }
        if self.contracted_centers is not None:
            data["contracted_centers"] = [coords(c) for c in self.contracted_centers]
        data.update(self.extra)
        return data
