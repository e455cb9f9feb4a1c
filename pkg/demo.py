# Short demonstration run: perimeter and area campaigns in the hyperbolic plane,
# then the induction checks and figures of the square-of-four scene.

import sys

from src.entity.config_entity import CampaignConfig
from src.entity.geometry_entity import Configuration, Disk, Plane
from src.entity.scene import Scene
from src.exception import GeometryException
from src.geometry import kernel
from src.logger import logging
from src.pipline.verification_pipeline import VerificationPipeline
from src.utils.main_utils import write_json_file

SCENE_FILE = "artifact/demo/square_of_four.json"


def square_of_four() -> Scene:
    plane = Plane.hyperbolic(1.0)
    corners = [(0.8, 0.8), (-0.8, 0.8), (-0.8, -0.8), (0.8, -0.8)]
    disks = [Disk(kernel.point_from_xy(plane, x, y), 0.3) for x, y in corners]
    return Scene(config=Configuration(plane, disks), trials=20)


if __name__ == "__main__":
    try:
        write_json_file(SCENE_FILE, square_of_four().to_dict())
        campaign = CampaignConfig(model="hyperbolic", trials=50, max_disks=6)

        random_run = VerificationPipeline(artifact_dir="artifact/demo/random", campaign=campaign)
        random_ok = random_run.run_pipeline()

        scene_run = VerificationPipeline(artifact_dir="artifact/demo/scene", scene_file_path=SCENE_FILE,
                                         campaign=campaign)
        scene_ok = scene_run.run_pipeline()
        scene = scene_run.start_scene_loading()
        for what in ("central", "intersection", "cocentral"):
            scene_run.start_scene_rendering(scene, what)
            logging.info(f"rendered {what}")

        print(f"random campaigns passed: {random_ok}, square-of-four passed: {scene_ok}")
        sys.exit(0 if random_ok and scene_ok else 1)

    except GeometryException as e:
        logging.error(f"demo failed: {e}")
        sys.exit(1)
