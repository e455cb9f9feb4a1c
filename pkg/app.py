"""
Command-line driver of the disk-geometry toolkit.

    python app.py hull scene.json
    python app.py verify-perimeter --model hyperbolic --trials 1000 --out artifact/run1
    python app.py verify-area scene.json --tol 1e-7
    python app.py render scene.json --what central --out figure.svg

Exit codes: 0 everything passed, 1 a violation (or an internal failure) was found, 2 bad input.
"""
import argparse
import json
import os
import sys
from dataclasses import replace
from typing import List, Optional

from src.components.scene_loader import SceneLoader
from src.components.scene_renderer import RENDER_TARGETS
from src.constants import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VIOLATION
from src.entity.artifact_entity import CampaignArtifact, SceneLoadingArtifact
from src.entity.config_entity import SceneLoadingConfig
from src.exception import is_input_error
from src.logger import logging
from src.pipline.verification_pipeline import (VerificationPipeline,
                                               campaign_from_scene)

SHAPE_COMMANDS = {"hull": "hull", "intersect": "intersection",
                  "central-tree": "central", "cocentral-tree": "cocentral"}


def _read_scene(path: str) -> SceneLoadingArtifact:
    """Parses a scene without writing an artifact copy."""
    scene = SceneLoader(SceneLoadingConfig(source_file_path=path)).read_scene()
    return SceneLoadingArtifact(scene_file_path=path, scene=scene)


def _pipeline(args: argparse.Namespace) -> VerificationPipeline:
    """Pipeline with settings file < scene < command-line flags."""
    pipeline = VerificationPipeline(artifact_dir=args.out, scene_file_path=getattr(args, "scene", None))
    campaign = pipeline.campaign
    overrides = {}
    if args.model is not None:
        overrides["model"] = args.model
    if args.curvature is not None:
        overrides["curvature"] = args.curvature
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.radius_max is not None:
        overrides["radius_max"] = args.radius_max
    if args.max_disks is not None:
        overrides["max_disks"] = args.max_disks
    pipeline.use_campaign(replace(campaign, **overrides))
    if args.tol is not None:
        pipeline.set_tolerance(args.tol)
    return pipeline


def _scene_campaign(pipeline: VerificationPipeline, args: argparse.Namespace) -> Optional[SceneLoadingArtifact]:
    """Loads the scene, if any, and lets explicit flags win over the scene's own settings."""
    scene_loading_artifact = pipeline.start_scene_loading()
    if scene_loading_artifact is None:
        return None
    scene = scene_loading_artifact.scene
    campaign = campaign_from_scene(pipeline.campaign, scene)
    overrides = {"seed": args.seed, "trials": args.trials, "radius_max": args.radius_max}
    pipeline.use_campaign(replace(campaign, **{k: v for k, v in overrides.items() if v is not None}))
    pipeline.set_tolerance(args.tol if args.tol is not None else scene.tolerance)
    return scene_loading_artifact


def _report_campaign(name: str, artifact: CampaignArtifact) -> int:
    print(f"{name}: {artifact.trial_count} trials, {artifact.failure_count} failures, "
          f"min margin {artifact.min_margin}")
    print(f"  trials:  {artifact.trials_file_path}")
    print(f"  summary: {artifact.summary_file_path}")
    return EXIT_OK if artifact.passed else EXIT_VIOLATION


def cmd_shape(args: argparse.Namespace) -> int:
    scene_loading_artifact = _read_scene(args.scene)
    pipeline = VerificationPipeline(artifact_dir=os.path.dirname(args.out) if args.out else None)
    report = pipeline.start_shape_report(scene_loading_artifact, SHAPE_COMMANDS[args.command], args.out)
    if args.out is None:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(f"{args.command}: {args.out}")
    return EXIT_OK


def cmd_verify_perimeter(args: argparse.Namespace) -> int:
    pipeline = _pipeline(args)
    scene_loading_artifact = _scene_campaign(pipeline, args)
    return _report_campaign("verify-perimeter", pipeline.start_perimeter_verification(scene_loading_artifact))


def cmd_verify_area(args: argparse.Namespace) -> int:
    pipeline = _pipeline(args)
    scene_loading_artifact = _scene_campaign(pipeline, args)
    return _report_campaign("verify-area", pipeline.start_area_verification(scene_loading_artifact))


def cmd_verify_induction(args: argparse.Namespace) -> int:
    pipeline = _pipeline(args)
    scene_loading_artifact = _scene_campaign(pipeline, args)
    artifact = pipeline.start_induction_verification(scene_loading_artifact)
    print(f"verify-induction: passed {artifact.passed}; report: {artifact.report_file_path}")
    for note in artifact.notes:
        print(f"  note: {note}")
    return EXIT_OK if artifact.passed else EXIT_VIOLATION


def cmd_render(args: argparse.Namespace) -> int:
    scene_loading_artifact = _read_scene(args.scene)
    figure = args.out if args.out and args.out.endswith(".svg") else None
    pipeline = VerificationPipeline(artifact_dir=None if figure else args.out)
    if figure is not None:
        pipeline.scene_rendering_config = replace(pipeline.scene_rendering_config, figure_file_path=figure)
    artifact = pipeline.start_scene_rendering(scene_loading_artifact, args.what)
    print(f"render: {artifact.element_count} elements -> {artifact.figure_file_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", choices=["hyperbolic", "euclidean", "spherical"], default=None,
                        help="plane of generated systems (scene files carry their own)")
    common.add_argument("--curvature", type=float, default=None, help="curvature magnitude k > 0")
    common.add_argument("--seed", type=int, default=None, help="campaign seed")
    common.add_argument("--trials", type=int, default=None, help="number of trials")
    common.add_argument("--tol", type=float, default=None, help="relative margin tolerance")
    common.add_argument("--out", default=None,
                        help="artifact folder for campaigns; output file for reports and figures")
    common.add_argument("--radius-max", dest="radius_max", type=float, default=None,
                        help="largest random radius (0 gives point systems)")
    common.add_argument("--max-disks", dest="max_disks", type=int, default=None,
                        help="largest number of disks per random system")

    parser = argparse.ArgumentParser(prog="app.py", description="Disk hulls, intersections and their monotonicity checks")
    commands = parser.add_subparsers(dest="command", required=True)

    for name in SHAPE_COMMANDS:
        sub = commands.add_parser(name, parents=[common], help=f"{SHAPE_COMMANDS[name]} of a scene as JSON")
        sub.add_argument("scene", help="scene JSON file")
        sub.set_defaults(handler=cmd_shape)

    sub = commands.add_parser("verify-perimeter", parents=[common], help="hull perimeter under contraction")
    sub.add_argument("scene", nargs="?", default=None, help="optional scene JSON file")
    sub.set_defaults(handler=cmd_verify_perimeter)

    sub = commands.add_parser("verify-area", parents=[common], help="intersection area under contraction")
    sub.add_argument("scene", nargs="?", default=None, help="optional scene JSON file")
    sub.set_defaults(handler=cmd_verify_area)

    sub = commands.add_parser("verify-induction", parents=[common], help="decomposition identities of a scene")
    sub.add_argument("scene", help="scene JSON file")
    sub.set_defaults(handler=cmd_verify_induction)

    sub = commands.add_parser("render", parents=[common], help="SVG figure of a scene")
    sub.add_argument("scene", help="scene JSON file")
    sub.add_argument("--what", choices=list(RENDER_TARGETS), default="hull")
    sub.set_defaults(handler=cmd_render)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except Exception as e:
        if is_input_error(e):
            logging.error(f"{args.command}: input error: {e}")
            print(f"error: {e}", file=sys.stderr)
            return EXIT_INPUT_ERROR
        logging.exception(f"{args.command} aborted")
        print(f"failure: {e}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
