import os
from dotenv import load_dotenv

# Loading environment variables
load_dotenv()

"""
Numerical tolerances, override with GEOMETRY_EPS / GEOMETRY_REL_EPS
"""
EPS_GEO: float = float(os.getenv("GEOMETRY_EPS", "1e-9"))
REL_EPS_GEO: float = float(os.getenv("GEOMETRY_REL_EPS", "1e-12"))
EMPTINESS_TOL: float = 1e-10
ANGLE_EPS: float = 1e-12

DEFAULT_CURVATURE: float = 1.0

"""
Tangent search
"""
TANGENT_BISECTION_GRID: int = 720
TANGENT_RESIDUAL_TOL: float = EPS_GEO

"""
Hemisphere certificate search
"""
HEMISPHERE_GRID_POINTS: int = 2000
HEMISPHERE_REFINE_ITERATIONS: int = 400

"""
Minimax witness search used by the emptiness test
"""
MINIMAX_SUBGRADIENT_STEPS: int = 400
MINIMAX_POLISH_ITERATIONS: int = 200

"""
Co-central set
"""
COVERAGE_SAMPLES_PER_ARC: int = 64
HYPERCONVEXITY_PAIRS: int = 20
SPINDLE_BOUNDARY_POINTS: int = 100
HYPERCONVEXITY_TOL: float = 1e-8
BISECTOR_SCAN_SAMPLES: int = 400

"""
Two-disk comparison: tangent-foot and angle inequalities hold up to this margin
"""
TWO_DISK_MARGIN: float = 1e-9

"""
Tree assembly: apexes and disk centers closer than TREE_VERTEX_TOL are one vertex; a disk
crossing the boundary by less than TOUCH_DEPTH only touches it and is no generator
"""
TREE_VERTEX_TOL: float = 1e-6
TOUCH_DEPTH: float = 1e-6
FLAT_JUNCTION_SWEEP: float = 1e-3

"""
Stereographic projection
"""
POLE_PROXIMITY_TOL: float = 1e-6

PIPELINE_NAME: str = "kp-disk-geometry"
ARTIFACT_DIR: str = os.getenv("ARTIFACT_DIR", "artifact")
GEOMETRY_CONFIG_FILE_PATH = os.path.join("config", "geometry.yaml")
EFFECTIVE_SETTINGS_FILE_NAME: str = "settings.yaml"

"""
Scene loading related constant start with SCENE_LOADING VAR NAME
"""
SCENE_LOADING_DIR_NAME: str = "scene_loading"
SCENE_LOADING_FILE_NAME: str = "scene.json"

"""
Report related constants shared by the verification stages
"""
TRIALS_FILE_NAME: str = "trials.csv"
SUMMARY_FILE_NAME: str = "summary.json"
TRIAL_COLUMNS = ["trial", "seed", "kind", "before", "after", "margin", "pass"]

"""
Perimeter verification related constant start with PERIMETER_VERIFICATION VAR NAME
"""
PERIMETER_VERIFICATION_DIR_NAME: str = "perimeter_verification"
PERIMETER_VERIFICATION_TOLERANCE: float = 1e-7

"""
Area verification related constant start with AREA_VERIFICATION VAR NAME
"""
AREA_VERIFICATION_DIR_NAME: str = "area_verification"
AREA_VERIFICATION_TOLERANCE: float = 1e-7
AREA_VERIFICATION_RESAMPLE_LIMIT: int = 200

"""
Induction verification related constant start with INDUCTION_VERIFICATION VAR NAME
"""
INDUCTION_VERIFICATION_DIR_NAME: str = "induction_verification"
INDUCTION_REPORT_FILE_NAME: str = "induction.json"
INDUCTION_RELATIVE_TOLERANCE: float = 1e-6
INDUCTION_PERIMETER_TOLERANCE: float = 1e-7
INDUCTION_INDICATOR_SAMPLES: int = 10_000

"""
Rendering related constant start with SCENE_RENDERING VAR NAME
"""
SCENE_RENDERING_DIR_NAME: str = "scene_rendering"
SCENE_RENDERING_FILE_NAME: str = "figure.svg"
SVG_CANVAS_SIZE: int = 640
SVG_ARC_SAMPLES: int = 96

"""
Campaign defaults
"""
DEFAULT_SEED: int = 20240611
DEFAULT_TRIALS: int = 100
DEFAULT_MAX_DISKS: int = 8
DEFAULT_MIN_DISKS: int = 2
DEFAULT_RADIUS_MAX: float = 1.0
SINGLE_POINT_MOVE_TRIALS: int = 10_000
PROPOSAL_BATCH: int = 256
SHRINK_STEPS: int = 40

"""
CLI exit codes
"""
EXIT_OK: int = 0
EXIT_VIOLATION: int = 1
EXIT_INPUT_ERROR: int = 2
