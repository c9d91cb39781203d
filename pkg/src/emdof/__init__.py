"""Eigenvalue spectra, DoF counts, and field patterns of concentration operators."""

from .backend import backend_name
from .channel import (
    ChannelOperator,
    ChannelReport,
    Theorem2Record,
    TrialGeometry,
    apply_channel,
    build_channel_operator,
    cdof,
    hs_norm,
    singular_values,
    verify_theorem2,
)
from .dof import (
    DEFAULT_EPS_LADDER,
    DofReport,
    asymptotic_dof,
    build_dof_report,
    fdof,
    shannon_check,
    shannon_count,
)
from .errors import (
    CapacityError,
    ConfigurationError,
    EmdofError,
    InvalidRegionError,
    NumericFailureError,
)
from .kernels import (
    C_LIGHT,
    KernelSpec,
    bessel_j1,
    eval_ball3d,
    eval_disk2d,
    eval_dual_ball,
    eval_dual_cuboid,
    eval_shell3d,
    eval_sphere3d,
    eval_spacetime,
    eval_time1d,
    evaluate,
    kernel_diagonal,
    max_wavenumber,
    pairwise_matrix,
)
from .quadrature import (
    DEFAULT_NODE_CAP,
    Grid,
    gauss_legendre_rule,
    gl_box_grid,
    sphere_grid,
    space_time_grid,
    uniform_box_grid,
    wavenumber_sector_grid,
)
from .spectrum import (
    DiscreteOperator,
    PatternSet,
    Spectrum,
    assemble,
    correlation_matrix,
    eigendecompose,
)

__version__ = "0.1.0"

__all__ = [
    "C_LIGHT",
    "DEFAULT_EPS_LADDER",
    "DEFAULT_NODE_CAP",
    "CapacityError",
    "ChannelOperator",
    "ChannelReport",
    "ConfigurationError",
    "DiscreteOperator",
    "DofReport",
    "EmdofError",
    "Grid",
    "InvalidRegionError",
    "KernelSpec",
    "NumericFailureError",
    "PatternSet",
    "Spectrum",
    "Theorem2Record",
    "TrialGeometry",
    "apply_channel",
    "assemble",
    "asymptotic_dof",
    "backend_name",
    "bessel_j1",
    "build_channel_operator",
    "build_dof_report",
    "cdof",
    "correlation_matrix",
    "eigendecompose",
    "eval_ball3d",
    "eval_disk2d",
    "eval_dual_ball",
    "eval_dual_cuboid",
    "eval_shell3d",
    "eval_sphere3d",
    "eval_spacetime",
    "eval_time1d",
    "evaluate",
    "fdof",
    "gauss_legendre_rule",
    "gl_box_grid",
    "hs_norm",
    "kernel_diagonal",
    "max_wavenumber",
    "pairwise_matrix",
    "shannon_check",
    "shannon_count",
    "singular_values",
    "space_time_grid",
    "sphere_grid",
    "uniform_box_grid",
    "verify_theorem2",
    "wavenumber_sector_grid",
]
