"""
Contractions of finite disk systems: certification and random generators.

A contraction keeps the radii and moves the centers so that no pairwise distance grows.
Every generator certifies its own output; a failed certificate is a bug, not a rejection.
"""
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from src.constants import (DEFAULT_MAX_DISKS, DEFAULT_MIN_DISKS,
                           DEFAULT_RADIUS_MAX, EPS_GEO,
                           PROPOSAL_BATCH, SHRINK_STEPS,
                           SINGLE_POINT_MOVE_TRIALS)
from src.entity.geometry_entity import Configuration, Disk, Plane, Point
from src.entity.shape_entity import ContractionPair, ContractionReport
from src.exception import (ContractionViolationError, DomainError,
                           HemisphereError, SamplingError,
                           UnsupportedGeneratorError)
from src.geometry import kernel
from src.geometry.disk_hull import certify_hemisphere
from src.logger import logging

Generator = Callable[[Configuration], Configuration]
CONTRACTION_KINDS = ("radial", "single_point", "composed")


def _pairwise(plane: Plane, centers: np.ndarray) -> np.ndarray:
    return np.array([kernel.distance(plane, c, centers) for c in centers]).reshape(len(centers), len(centers))


def is_contraction(pair: ContractionPair, tol: float = EPS_GEO) -> ContractionReport:
    """
    Method Name :   is_contraction
    Description :   checks d(p_i', p_j') <= d(p_i, p_j) + tol for all pairs and equal radii

    Output      :   ContractionReport with the largest growth of a pairwise distance
    On Failure  :   DomainError when the two configurations do not match
    """
    original, contracted = pair.original, pair.contracted
    if original.plane != contracted.plane:
        raise DomainError("a contraction pair must live in one plane")
    if len(original) != len(contracted):
        raise DomainError(f"configurations differ in size: {len(original)} vs {len(contracted)}")
    if not np.allclose(original.radii, contracted.radii, rtol=0.0, atol=EPS_GEO):
        raise DomainError("a contraction keeps every radius")
    n = len(original)
    if n < 2:
        return ContractionReport(True, 0.0, None)
    growth = _pairwise(contracted.plane, contracted.centers) - _pairwise(original.plane, original.centers)
    upper = np.triu_indices(n, 1)
    worst = int(np.argmax(growth[upper]))
    i, j = int(upper[0][worst]), int(upper[1][worst])
    violation = float(growth[i, j])
    return ContractionReport(violation <= tol, violation, (i, j))


def _certified(original: Configuration, contracted: Configuration) -> Configuration:
    report = is_contraction(ContractionPair(original, contracted))
    if not report.is_contraction:
        raise ContractionViolationError(f"generator grew distance of pair {report.worst_pair} by {report.max_violation:.3e}")
    if contracted.plane.is_spherical:
        try:
            certify_hemisphere(contracted)
        except HemisphereError as e:
            raise ContractionViolationError(f"contracted spherical system left every hemisphere: {e}") from e
    return contracted


def radial_contraction(config: Configuration, anchor: Point, lam: float) -> Configuration:
    """Moves every center to the point at fraction lam of [anchor, p_i]."""
    plane = config.plane
    if plane.is_spherical:
        raise UnsupportedGeneratorError("radial contraction is not distance-nonincreasing on the sphere")
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"radial factor must lie in [0, 1], got {lam}")
    anchor = kernel.validate_point(plane, anchor)
    centers = kernel.exp_map(plane, anchor, lam * kernel.log_map(plane, anchor, config.centers))
    return _certified(config, config.with_centers(centers))


def _first_admissible(config: Configuration, index: int, candidates: np.ndarray,
                      reach: np.ndarray) -> Optional[Configuration]:
    plane, centers = config.plane, config.centers
    others = np.array([j for j in range(len(config)) if j != index])
    far = kernel.distance(plane, candidates[:, None, :], centers[others][None, :, :])
    for row in np.flatnonzero(np.all(far <= reach + EPS_GEO, axis=1)):
        moved = centers.copy()
        moved[index] = candidates[row]
        contracted = config.with_centers(moved)
        if plane.is_spherical:
            try:
                certify_hemisphere(contracted)
            except HemisphereError:
                continue
        return contracted
    return None


def single_point_move(config: Configuration, index: int, rng: np.random.Generator,
                      trials: int = SINGLE_POINT_MOVE_TRIALS) -> Configuration:
    """
    Resamples center ``index`` in the intersection of the balls B(p_j, d(p_i, p_j)).

    The first ``trials`` proposals come from the smallest of those balls, so an accepted one is
    uniform in the target set. When all of them miss (the target set is thin), proposals come
    from balls around p_i with halving radius; p_i always belongs to the target set. On the
    sphere a proposal must also keep the system inside a hemisphere.
    """
    plane = config.plane
    if not 0 <= index < len(config):
        raise DomainError(f"no disk with index {index}")
    centers = config.centers
    others = [j for j in range(len(config)) if j != index]
    if not others:
        return config
    if trials <= 0:
        raise SamplingError(f"no proposals allowed for disk {index}")
    reach = kernel.distance(plane, centers[index], centers[others])
    smallest = int(np.argmin(reach))
    base, radius = centers[others[smallest]], float(reach[smallest])
    for start in range(0, trials, PROPOSAL_BATCH):
        count = min(PROPOSAL_BATCH, trials - start)
        contracted = _first_admissible(config, index, kernel.sample_ball(plane, base, radius, count, rng), reach)
        if contracted is not None:
            return _certified(config, contracted)
    for step in range(1, SHRINK_STEPS + 1):
        local = radius * 0.5 ** step
        contracted = _first_admissible(config, index,
                                       kernel.sample_ball(plane, centers[index], local, PROPOSAL_BATCH, rng), reach)
        if contracted is not None:
            logging.debug(f"single-point move of disk {index} fell back to a ball of radius {local:.3e}")
            return _certified(config, contracted)
    raise SamplingError(f"disk {index} cannot move without growing a distance")


def compose(config: Configuration, generators: Sequence[Generator]) -> Configuration:
    """Applies the generators in order and re-certifies the end-to-end pair."""
    current = config
    for generator in generators:
        current = generator(current)
    return _certified(config, current)


# ------------------------------------------------------------
# RANDOM INSTANCES
# ------------------------------------------------------------

def trial_generator(seed: int, trial: int) -> np.random.Generator:
    """Independent counter-based stream of one trial of a campaign."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(trial,))))


def random_configuration(plane: Plane, rng: np.random.Generator, min_disks: int = DEFAULT_MIN_DISKS,
                         max_disks: int = DEFAULT_MAX_DISKS, radius_max: float = DEFAULT_RADIUS_MAX,
                         spread: Optional[float] = None) -> Configuration:
    """
    Random system around the chart origin.

    Centers are drawn area-uniformly in B(origin, spread) and radii uniformly in [0, radius_max].
    Spherical systems keep spread and radii below pi/(4k) so that the system fits a hemisphere.
    """
    count = int(rng.integers(min_disks, max_disks + 1))
    if spread is None:
        spread = 2.0
    if plane.is_spherical:
        limit = np.pi / (4.0 * plane.k)
        spread = min(spread, limit)
        radius_max = min(radius_max, limit * (1.0 - 1e-6))
    centers = kernel.sample_ball(plane, plane.origin, spread, count, rng)
    radii = radius_max * rng.random(count)
    return Configuration(plane, [Disk(c, r) for c, r in zip(centers, radii)])


def random_contraction(config: Configuration, rng: np.random.Generator,
                       kind: Optional[str] = None, trials: int = SINGLE_POINT_MOVE_TRIALS) -> Tuple[str, Configuration]:
    """Draws a generator (radial, single_point or composed) and applies it; the sphere has no radial step."""
    plane = config.plane
    kinds = CONTRACTION_KINDS[1:] if plane.is_spherical else CONTRACTION_KINDS
    kind = kinds[int(rng.integers(len(kinds)))] if kind is None else kind
    if kind not in kinds:
        raise UnsupportedGeneratorError(f"generator {kind!r} is not available in the {plane.kind.value} plane")

    def radial(current: Configuration) -> Configuration:
        anchor = current.centers[int(rng.integers(len(current)))]
        return radial_contraction(current, anchor, float(rng.uniform(0.0, 1.0)))

    def single(current: Configuration) -> Configuration:
        return single_point_move(current, int(rng.integers(len(current))), rng, trials)

    if kind == "radial":
        return kind, radial(config)
    if kind == "single_point":
        return kind, single(config)
    if plane.is_spherical:
        steps = [single for _ in range(int(rng.integers(2, 4)))]
    else:
        steps = [radial if rng.random() < 0.5 else single for _ in range(int(rng.integers(2, 4)))]
    return kind, compose(config, steps)
