"""Medial axes, central sets and Kuratowski limits of planar set families."""

from ._backend import BACKEND
from .errors import (
    EmptyOnWindow,
    HypothesisFailed,
    InvalidGeometry,
    MedKuraError,
    NonSmooth,
    NotUnivalent,
    OnSet,
    OriginMissing,
    ScheduleTooShort,
    ToleranceConflict,
    ZeroCurvature,
)
from .kuratowski import (
    ConvergenceReport,
    LimitEstimate,
    TheoremVerdict,
    analyze_family,
    converges,
    excess,
    hausdorff,
    lower_limit,
    theorem_check,
    upper_limit,
)
from .medial import (
    InflationResult,
    PointSetEstimate,
    SmoothGraph,
    ball_inflation,
    central_set,
    curvature_of_graph,
    focal_point,
    medial_axis,
    sandwich_check,
    unique_nearest_by_focal,
)
from .params import Params
from .proximity import NearestResult, distance, distance_gradient, nearest_points, squared_distance
from .scenarios import Scenario, builtin_scenarios, dilatation_family, lookup, tangent_cone_check
from .setrep import (
    Circle,
    Line,
    ParamFamily,
    Parabola,
    PointSet,
    Ray,
    Segment,
    SetOracle,
    SqrtGraph,
    Window,
    geometric_schedule,
    restrict_to_window,
    sample_set,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
