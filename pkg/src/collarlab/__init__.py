"""collarlab: numerical laboratory for hyperbolic collars and quadratic differentials."""

__version__ = "0.1.0"

from .collar import (
    DELTA_MAX,
    CollarParams,
    Dz2Norms,
    ThinPart,
    conformal_factor,
    dz2_norms,
    half_width,
    rho_at_thin_edge,
    rho_inv_integral,
    rho_inv_sq_integral,
    thin_threshold,
)
from .fields import (
    HoloSplit,
    QDOnCollar,
    SpectralField,
    alpha,
    alpha_l1,
    alpha_values,
    collar_gauss_grid,
    dbar,
    dbar_l1_norm,
    dbar_l1_norm_log,
    dz2_field,
    field_from_dict,
    field_to_dict,
    holo_split,
    holomorphic_extend,
    l1_norm,
    l1_norm_log,
    l2_inner,
    l2_norm,
    make_field,
    project_out_dz2,
    sup_tensor_norm,
)
from .cauchy import (
    CauchyBreakdown,
    RectangleSpec,
    RemarkReport,
    averaged_breakdown,
    averaged_reconstruct,
    cauchy_reconstruct,
    make_rectangle,
    mean_value_kernel_gap,
    rectangle_at,
    remark_checks,
)
from .surfaces import (
    FlatTorus,
    TorusField,
    shear_mode,
    sphere_ratio,
    torus_l1_parts,
    torus_project,
    torus_ratio,
    torus_ratio_exact,
)
from .lab import (
    DecayFitResult,
    MaximizeConfig,
    MaximizeResult,
    SweepReport,
    alpha_constant_sweep,
    decay_fit,
    maximize_ratio,
    rayleigh_surrogate,
    thin_mass_sweep,
)

__all__ = [
    "DELTA_MAX",
    "CollarParams",
    "Dz2Norms",
    "ThinPart",
    "conformal_factor",
    "dz2_norms",
    "half_width",
    "rho_at_thin_edge",
    "rho_inv_integral",
    "rho_inv_sq_integral",
    "thin_threshold",
    "HoloSplit",
    "QDOnCollar",
    "SpectralField",
    "alpha",
    "alpha_l1",
    "alpha_values",
    "collar_gauss_grid",
    "dbar",
    "dbar_l1_norm",
    "dbar_l1_norm_log",
    "dz2_field",
    "field_from_dict",
    "field_to_dict",
    "holo_split",
    "holomorphic_extend",
    "l1_norm",
    "l1_norm_log",
    "l2_inner",
    "l2_norm",
    "make_field",
    "project_out_dz2",
    "sup_tensor_norm",
    "CauchyBreakdown",
    "RectangleSpec",
    "RemarkReport",
    "averaged_breakdown",
    "averaged_reconstruct",
    "cauchy_reconstruct",
    "make_rectangle",
    "mean_value_kernel_gap",
    "rectangle_at",
    "remark_checks",
    "FlatTorus",
    "TorusField",
    "shear_mode",
    "sphere_ratio",
    "torus_l1_parts",
    "torus_project",
    "torus_ratio",
    "torus_ratio_exact",
    "DecayFitResult",
    "MaximizeConfig",
    "MaximizeResult",
    "SweepReport",
    "alpha_constant_sweep",
    "decay_fit",
    "maximize_ratio",
    "rayleigh_surrogate",
    "thin_mass_sweep",
    "__version__",
]
