from dataclasses import dataclass, field
from enum import Enum
from typing import List, Sequence

import numpy as np
from numpy.typing import NDArray

from src.constants import DEFAULT_CURVATURE
from src.exception import DomainError

# A point is a 3-vector in the linear model of its plane:
#   hyperbolic  upper sheet of <p,p> = -1/k^2, form diag(1, 1, -1)
#   euclidean   affine chart z = 1
#   spherical   sphere |p| = 1/k
# Arrays of shape (N, 3) are accepted wherever a batch makes sense.
Point = NDArray[np.float64]


class ModelKind(str, Enum):
    HYPERBOLIC = "hyperbolic"
    EUCLIDEAN = "euclidean"
    SPHERICAL = "spherical"


_GRAMS = {
    ModelKind.HYPERBOLIC: np.diag([1.0, 1.0, -1.0]),
    ModelKind.EUCLIDEAN: np.diag([1.0, 1.0, 0.0]),
    ModelKind.SPHERICAL: np.eye(3),
}


@dataclass(frozen=True)
class Plane:
    """Ambient constant-curvature plane: sectional curvature -k^2, 0 or +k^2."""
    kind: ModelKind
    k: float = DEFAULT_CURVATURE

    def __post_init__(self):
        try:
            kind = ModelKind(self.kind)
        except ValueError as e:
            raise DomainError(f"unknown model kind: {self.kind!r}") from e
        object.__setattr__(self, "kind", kind)
        if kind is ModelKind.EUCLIDEAN:
            object.__setattr__(self, "k", 1.0)
        elif not (np.isfinite(self.k) and self.k > 0):
            raise DomainError(f"curvature magnitude must be positive, got {self.k}")
        else:
            object.__setattr__(self, "k", float(self.k))

    @classmethod
    def hyperbolic(cls, k: float = DEFAULT_CURVATURE) -> "Plane":
        return cls(ModelKind.HYPERBOLIC, k)

    @classmethod
    def euclidean(cls) -> "Plane":
        return cls(ModelKind.EUCLIDEAN, 1.0)

    @classmethod
    def spherical(cls, k: float = DEFAULT_CURVATURE) -> "Plane":
        return cls(ModelKind.SPHERICAL, k)

    @property
    def is_hyperbolic(self) -> bool:
        return self.kind is ModelKind.HYPERBOLIC

    @property
    def is_euclidean(self) -> bool:
        return self.kind is ModelKind.EUCLIDEAN

    @property
    def is_spherical(self) -> bool:
        return self.kind is ModelKind.SPHERICAL

    @property
    def gram(self) -> NDArray[np.float64]:
        """Bilinear form of the linear model (degenerate on the affine chart)."""
        return _GRAMS[self.kind]

    @property
    def curvature(self) -> float:
        if self.is_hyperbolic:
            return -self.k ** 2
        if self.is_spherical:
            return self.k ** 2
        return 0.0

    @property
    def origin(self) -> Point:
        """Base point of the chart: bottom of the hyperboloid, chart origin, north pole."""
        if self.is_euclidean:
            return np.array([0.0, 0.0, 1.0])
        return np.array([0.0, 0.0, 1.0 / self.k])


@dataclass(frozen=True, eq=False)
class Geodesic:
    """
    Oriented complete geodesic stored as its unit normal.

    For the curved models the normal is a unit vector of the model form orthogonal to
    the 2-plane through the origin cut out by the geodesic. For the euclidean chart it
    is (nx, ny, c) with |(nx, ny)| = 1 and the line nx*x + ny*y + c = 0. Points with
    positive signed distance lie to the left of the direction of travel.
    """
    normal: NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class Disk:
    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        object.__setattr__(self, "radius", float(self.radius))
        if not np.isfinite(self.radius) or self.radius < 0.0:
            raise DomainError(f"disk radius must be a nonnegative real, got {self.radius}")

    def __repr__(self) -> str:
        return f"Disk(center={np.array2string(self.center, precision=6)}, radius={self.radius:.6g})"


@dataclass(frozen=True, eq=False)
class Isometry:
    """3x3 matrix acting on the linear model; orientation flag kept for reflections."""
    matrix: NDArray[np.float64]
    orientation_preserving: bool = True

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.matrix @ other.matrix,
                        self.orientation_preserving == other.orientation_preserving)


@dataclass(frozen=True, eq=False)
class TangentData:
    """Outer common tangent: the line (both disks on its positive side) and the two feet."""
    line: Geodesic
    foot1: Point
    foot2: Point


@dataclass(eq=False)
class Configuration:
    plane: Plane
    disks: List[Disk] = field(default_factory=list)

    def __post_init__(self):
        if self.plane.is_spherical:
            limit = np.pi / (2.0 * self.plane.k)
            for index, disk in enumerate(self.disks):
                if disk.radius >= limit:
                    raise DomainError(f"spherical disk {index} has radius {disk.radius} >= pi/(2k) = {limit:.6g}")

    def __len__(self) -> int:
        return len(self.disks)

    @property
    def centers(self) -> NDArray[np.float64]:
        return np.array([d.center for d in self.disks], dtype=float).reshape(-1, 3)

    @property
    def radii(self) -> NDArray[np.float64]:
        return np.array([d.radius for d in self.disks], dtype=float)

    def with_centers(self, centers: Sequence[Point]) -> "Configuration":
        """Same plane and radii, new centers (the shape of a contracted system)."""
        centers = np.asarray(centers, dtype=float).reshape(-1, 3)
        if len(centers) != len(self.disks):
            raise DomainError(f"expected {len(self.disks)} centers, got {len(centers)}")
        return Configuration(self.plane, [Disk(c, d.radius) for c, d in zip(centers, self.disks)])

    def subset(self, indices: Sequence[int]) -> "Configuration":
        return Configuration(self.plane, [self.disks[i] for i in indices])
