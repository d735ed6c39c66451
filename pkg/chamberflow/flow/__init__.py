"""Gradient flow of the chamber field, collapses and cascades"""

from .cascade import Cascade, backward_trace, cascade  # noqa: F401
from .integrate import (  # noqa: F401
    CollapseEvent,
    FixedPoint,
    FlowOptions,
    Sample,
    Termination,
    Timeout,
    Trajectory,
    integrate,
)
from .newton import NewtonResult, minimal_point, newton  # noqa: F401
from .rk import RKDP54, ExplicitRungeKutta  # noqa: F401
from .stratum import FlowDomain, normal_residual, normal_tolerance, stratum_field, stratum_hessian, stratum_potential  # noqa: F401
from .typei import BlowupFit, TypeIEstimate, fit_blowup, tail_offsets, type_I_estimate  # noqa: F401
