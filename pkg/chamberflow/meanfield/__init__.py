"""Closed-form curvature quantities"""

from .field import (  # noqa: F401
    RootArrays,
    SpectrumEntry,
    as_chamber,
    gradient_rho,
    hessian_rho,
    min_hessian_eigenvalue,
    orbit_shape_spectrum,
    potential_rho,
    root_arrays,
    shape_sup_norm,
    spectrum_trace,
    vector_field_X,
)
from .lift import (  # noqa: F401
    CurvatureEntry,
    CurvatureFamily,
    PrincipalCurvature,
    TraceResult,
    family_from_entries,
    lift_family,
    lift_mean_curvature,
    lift_principal_curvatures,
    lifted_hessian,
    lifted_potential,
    regularized_trace,
)
from .spectra import ArctanSpectrum, lifted_spectrum_arctan  # noqa: F401
