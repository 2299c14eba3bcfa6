"""High-order space-time trajectory reconstruction and kinematics.

Particle tracks arrive as discrete (t, x[, y[, z]]) samples; this package
fits each axis with piecewise degree-N polynomials that interpolate every
sample and stay continuous across cells, optionally limited against
spurious oscillations, and extracts instantaneous velocity/acceleration,
curvilinear path lengths, and summary velocities. A validation harness
reproduces the method's convergence benchmark and its comparison against
plain linear linking.
"""

from .errors import (
    CheckFailed,
    DuplicateTimestamp,
    MalformedRow,
    MissingNeighbor,
    NonMonotoneTimes,
    OutOfDomain,
    ShotrError,
    SingularSystem,
    UnsupportedDegree,
)
from .trajdata import AxisSeries, TrackSeries, TrackSet, parse_tracks, split_axes
from .mesh import StaggeredMesh, build_mesh, locate_cell
from .quadrature import gauss_legendre, gauss_points
from .recon import (
    CellPoly,
    PiecewisePoly,
    Stencil,
    TaylorBasis,
    assemble_clsq,
    build_stencil,
    effective_degree,
    reconstruct_axis,
    reconstruct_track,
    reconstruction_matrix,
    reconstruction_operators,
    solve_clsq,
)
from .cweno import (
    CandidateSet,
    CwenoConfig,
    blend,
    central_poly,
    limit_piecewise,
    make_candidates,
    nonlinear_weights,
    one_sided_p1,
    oscillation_indicator,
)
from .geometry import (
    CellGeometry,
    NodalBasis,
    cell_geometry,
    cell_length,
    nodal_basis_derivatives,
    trajectory_length,
)
from .kinematics import (
    KinematicSample,
    VelocitySummary,
    dense_times,
    eval_at,
    sample_dense,
    summarize,
)
from .validate import (
    CASES,
    BacktraceResult,
    ComparisonRow,
    ConvergenceRow,
    ErrorNorms,
    SyntheticCase,
    backtrace,
    compare_spt,
    error_norms,
    get_case,
    rk_step,
    run_convergence,
)

__version__ = "0.1.0"
