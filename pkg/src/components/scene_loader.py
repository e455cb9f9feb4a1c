import sys

from src.entity.artifact_entity import SceneLoadingArtifact
from src.entity.config_entity import SceneLoadingConfig
from src.entity.scene import Scene
from src.exception import GeometryException, SceneParseError
from src.geometry.disk_hull import validate_configuration
from src.logger import logging
from src.utils.main_utils import read_json_file, write_json_file


class SceneLoader:

    def __init__(self, scene_loading_config: SceneLoadingConfig):
        """
        :param scene_loading_config: where the scene comes from and where its normalized copy goes
        """
        try:
            self.scene_loading_config = scene_loading_config

        except Exception as e:
            raise GeometryException(e, sys) from e

    def read_scene(self) -> Scene:
        """
        Method Name :   read_scene
        Description :   This method parses the scene file and validates its disk system

        Output      :   Scene
        On Failure  :   SceneParseError for unreadable or malformed files, HemisphereError for
                        spherical systems outside every hemisphere
        """
        source = self.scene_loading_config.source_file_path
        if source is None:
            raise SceneParseError("no scene file given")
        try:
            document = read_json_file(file_path=source)
        except GeometryException as e:
            raise SceneParseError(f"cannot read scene {source}: {e}") from e

        scene = Scene.from_dict(document)
        validate_configuration(scene.config)
        if scene.contraction is not None:
            validate_configuration(scene.contraction.contracted)
        logging.info(f"Scene {source}: {len(scene.config)} disks in the {scene.plane.kind.value} plane "
                     f"(k={scene.plane.k}), contraction given: {scene.contracted_centers is not None}")
        return scene

    def initiate_scene_loading(self) -> SceneLoadingArtifact:
        """
        Method Name :   initiate_scene_loading
        Description :   This method reads the scene and saves its normalized copy in the artifact folder

        Output      :   SceneLoadingArtifact
        On Failure  :   Write an exception log and then raise an exception
        """
        logging.info("Entered initiate_scene_loading method of SceneLoader class")

        try:
            scene = self.read_scene()
            write_json_file(self.scene_loading_config.scene_file_path, scene.to_dict())

            scene_loading_artifact = SceneLoadingArtifact(scene_file_path=self.scene_loading_config.scene_file_path,
                                                          scene=scene)
            logging.info(f"Scene loading artifact: {scene_loading_artifact.scene_file_path}")
            logging.info("Exited initiate_scene_loading method of SceneLoader class")
            return scene_loading_artifact

        except Exception as e:
            raise GeometryException(e, sys) from e
