"""Intersections of two 3D Bezier curves by Kantorovich-test subdivision.

The solver covers the unit parameter square with a FIFO queue of squares,
discards squares whose Bernstein coefficient hull excludes the origin,
certifies Newton convergence from square centers with a Kantorovich-type
test run per 2-of-3-coordinate sub-system, refines certified starts with
Newton's method, and prunes around confirmed intersections using the
theorem's uniqueness ball. Test-domain sizes can adapt from each parent
square's failure mode or stay fixed.
"""

from .geometry import (
    BezierCurve,
    ControlNet,
    Rect,
    UNIT_SQUARE,
    bernstein_basis,
    derivative_curve,
    derivative_net,
    difference_net,
    eval_curve,
    eval_net,
    extract_pair,
    jacobian,
    reparametrize,
    sample_curve,
    sample_net,
)
from .exclusion import exclusion_test, hull_excludes_origin
from .kantorovich import (
    COMPONENT_PAIRS,
    ExploredRegion,
    KantorovichOutcome,
    PairStatus,
    PairTest,
    SingularJacobianError,
    eta,
    explored_region,
    kantorovich_test,
    lipschitz_bound,
    rho_radii,
)
from .newton import NewtonResult, newton_solve
from .engine import (
    IntersectionRecord,
    SolveReport,
    SolverConfig,
    Square,
    point_is_known,
    region_prunes_square,
    solve,
    update_scales,
)
from .oracle import brute_force_intersections
from .problems import Problem, ProblemFormatError, load_problem, parse_problem, problem_to_dict

__all__ = [
    "BezierCurve",
    "ControlNet",
    "Rect",
    "UNIT_SQUARE",
    "bernstein_basis",
    "derivative_curve",
    "derivative_net",
    "difference_net",
    "eval_curve",
    "eval_net",
    "extract_pair",
    "jacobian",
    "reparametrize",
    "sample_curve",
    "sample_net",
    "exclusion_test",
    "hull_excludes_origin",
    "COMPONENT_PAIRS",
    "ExploredRegion",
    "KantorovichOutcome",
    "PairStatus",
    "PairTest",
    "SingularJacobianError",
    "eta",
    "explored_region",
    "kantorovich_test",
    "lipschitz_bound",
    "rho_radii",
    "NewtonResult",
    "newton_solve",
    "IntersectionRecord",
    "SolveReport",
    "SolverConfig",
    "Square",
    "point_is_known",
    "region_prunes_square",
    "solve",
    "update_scales",
    "brute_force_intersections",
    "Problem",
    "ProblemFormatError",
    "load_problem",
    "parse_problem",
    "problem_to_dict",
]

__version__ = "0.1.0"
