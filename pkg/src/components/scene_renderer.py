import sys
from typing import List, Tuple

import drawsvg as draw
import numpy as np
from numpy.typing import NDArray

from src.entity.artifact_entity import RenderArtifact, SceneLoadingArtifact
from src.entity.config_entity import SceneRenderingConfig
from src.entity.geometry_entity import Disk, Plane, Point
from src.entity.shape_entity import Arc, BoundaryChain, GeodesicTree
from src.exception import DomainError, GeometryException
from src.geometry import kernel
from src.geometry.central_set import central_tree
from src.geometry.cocentral_set import cocentral_tree
from src.geometry.disk_hull import hull_boundary
from src.geometry.disk_intersection import intersect_disks
from src.logger import logging
from src.utils.main_utils import write_text_file

RENDER_TARGETS = ("hull", "intersection", "central", "cocentral")
SOUTH = np.array([0.0, 0.0, -1.0])

# stroke colors per layer
BOUNDARY_COLOR = "#1f3b73"
TREE_COLOR = "#c0392b"
FRAME_COLOR = "#999999"


class SceneRendering:
    """
    Draws one construction of a scene as SVG.

    Hyperbolic scenes are drawn in the Poincare disk, euclidean scenes in their own chart and
    spherical scenes in the stereographic chart from the south pole. Only the construction is
    drawn: boundary arcs and segments, full circles, tree edges.
    """

    def __init__(self, scene_rendering_config: SceneRenderingConfig, scene_loading_artifact: SceneLoadingArtifact):
        """
        :param scene_rendering_config: target construction, canvas size and output path
        :param scene_loading_artifact: the scene to draw
        """
        try:
            self.scene_rendering_config = scene_rendering_config
            self.scene_loading_artifact = scene_loading_artifact
            self.plane: Plane = scene_loading_artifact.scene.plane
            if scene_rendering_config.what not in RENDER_TARGETS:
                raise DomainError(f"cannot render {scene_rendering_config.what!r}; expected one of {RENDER_TARGETS}")

        except Exception as e:
            raise GeometryException(e, sys) from e

    # ------------------------------------------------------------
    # CHART
    # ------------------------------------------------------------

    def chart(self, points: NDArray) -> NDArray:
        plane = self.plane
        points = np.atleast_2d(points)
        if plane.is_hyperbolic:
            return kernel.to_poincare(plane, points)
        if plane.is_euclidean:
            return points[:, :2].copy()
        return kernel.stereographic_project(Plane.spherical(1.0), SOUTH, plane.k * points)

    def chart_circle(self, disk: Disk) -> Tuple[NDArray, float]:
        if self.plane.is_spherical:
            center, radius = kernel.disk_to_cap(self.plane, disk)
            return kernel.cap_to_chart_circle(center, radius, SOUTH)
        return kernel.disk_to_chart_circle(self.plane, disk)

    def _geodesic_points(self, a: Point, b: Point) -> NDArray:
        plane = self.plane
        if float(kernel.distance(plane, a, b)) <= 1e-12:
            return np.vstack([a, b])
        t = np.linspace(0.0, 1.0, self.scene_rendering_config.arc_samples)
        return kernel.exp_map(plane, a, t[:, None] * kernel.log_map(plane, a, b))

    # ------------------------------------------------------------
    # SHAPES
    # ------------------------------------------------------------

    def chain_shapes(self, chain: BoundaryChain) -> List[Tuple[str, object]]:
        """One ("circle", (center, radius)) or ("path", chart points) per boundary piece."""
        plane, shapes = self.plane, []
        for piece in chain.pieces:
            if isinstance(piece, Arc):
                disk = chain.disks[piece.disk_index]
                if piece.sweep >= kernel.TWO_PI - 1e-12:
                    shapes.append(("circle", self.chart_circle(disk)))
                    continue
                angles = np.linspace(piece.start_angle, piece.end_angle, self.scene_rendering_config.arc_samples)
                shapes.append(("path", self.chart(kernel.point_on_circle(plane, disk, angles))))
            else:
                shapes.append(("path", self.chart(self._geodesic_points(piece.start, piece.end))))
        return shapes

    def tree_shapes(self, tree: GeodesicTree) -> List[Tuple[str, object]]:
        if not tree.edges:
            vertex = tree.vertices[0]
            return [("dot", self.chart(vertex.point)[0])]
        return [("path", self.chart(self._geodesic_points(tree.vertices[a].point, tree.vertices[b].point)))
                for a, b in tree.edges]

    def construction(self) -> Tuple[List[Tuple[str, object]], List[Tuple[str, object]]]:
        """Boundary shapes and tree shapes of the requested construction."""
        config = self.scene_loading_artifact.scene.config
        what = self.scene_rendering_config.what
        if what in ("hull", "central"):
            chain = hull_boundary(config)
            tree = central_tree(config, chain) if what == "central" else None
            return self.chain_shapes(chain), [] if tree is None else self.tree_shapes(tree)

        region = intersect_disks(config)
        if region.empty_flag:
            logging.info("intersection is empty: nothing to draw")
            return [], []
        if not region.has_interior:
            return [("dot", self.chart(region.witness)[0])], []
        tree = cocentral_tree(region) if what == "cocentral" else None
        return self.chain_shapes(region.chain), [] if tree is None else self.tree_shapes(tree)

    # ------------------------------------------------------------
    # DRAWING
    # ------------------------------------------------------------

    def _viewport(self, shapes: List[Tuple[str, object]]) -> Tuple[NDArray, float]:
        if self.plane.is_hyperbolic:
            return np.zeros(2), 1.05
        points = []
        for kind, payload in shapes:
            if kind == "circle":
                center, radius = payload
                points.extend([center - radius, center + radius])
            elif kind == "dot":
                points.append(payload)
            else:
                points.extend(payload)
        if not points:
            return np.zeros(2), 1.0
        points = np.array(points)
        low, high = points.min(axis=0), points.max(axis=0)
        return 0.5 * (low + high), max(0.55 * float(np.max(high - low)), 1e-3)

    def draw(self) -> Tuple[str, int]:
        """
        Method Name :   draw
        Description :   This method lays the construction out on the canvas and serializes it

        Output      :   (SVG document, number of construction elements)
        On Failure  :   Write an exception log and then raise an exception
        """
        boundary, tree = self.construction()
        size = self.scene_rendering_config.canvas_size
        center, half = self._viewport(boundary + tree)
        scale = size / (2.0 * half)

        def to_canvas(xy) -> Tuple[float, float]:
            x = size / 2.0 + scale * (float(xy[0]) - center[0])
            y = size / 2.0 - scale * (float(xy[1]) - center[1])
            return round(x, 4), round(y, 4)

        d = draw.Drawing(size, size)
        d.append(draw.Rectangle(0, 0, size, size, fill="white"))
        if self.plane.is_hyperbolic:
            cx, cy = to_canvas((0.0, 0.0))
            d.append(draw.Circle(cx, cy, round(scale, 4), fill="none", stroke=FRAME_COLOR, stroke_width=1))

        count = 0
        for shapes, color, width in ((boundary, BOUNDARY_COLOR, 2), (tree, TREE_COLOR, 1.5)):
            for kind, payload in shapes:
                if kind == "circle":
                    (cx, cy), radius = to_canvas(payload[0]), round(scale * payload[1], 4)
                    d.append(draw.Circle(cx, cy, radius, fill="none", stroke=color, stroke_width=width))
                elif kind == "dot":
                    cx, cy = to_canvas(payload)
                    d.append(draw.Circle(cx, cy, 3, fill=color))
                else:
                    flat = [v for xy in payload for v in to_canvas(xy)]
                    d.append(draw.Lines(*flat, close=False, fill="none", stroke=color, stroke_width=width))
                count += 1
        return d.as_svg(), count

    def initiate_scene_rendering(self) -> RenderArtifact:
        """
        Method Name :   initiate_scene_rendering
        Description :   This method draws the requested construction and saves the SVG figure

        Output      :   RenderArtifact
        On Failure  :   Write an exception log and then raise an exception
        """
        logging.info("Entered initiate_scene_rendering method of SceneRendering class")

        try:
            svg, count = self.draw()
            write_text_file(self.scene_rendering_config.figure_file_path, svg)
            render_artifact = RenderArtifact(figure_file_path=self.scene_rendering_config.figure_file_path,
                                             what=self.scene_rendering_config.what, element_count=count)
            logging.info(f"Rendered {count} elements of the {render_artifact.what} figure")
            logging.info("Exited initiate_scene_rendering method of SceneRendering class")
            return render_artifact

        except Exception as e:
            raise GeometryException(e, sys) from e
