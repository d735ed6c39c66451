#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

import logging

import numpy as np

from dataclasses import dataclass
from typing import Optional

from .stratum import FlowDomain, stratum_hessian
from ..config import settings
from ..meanfield import root_arrays
from ..rootsys import Stratum
from ..types import ConvergenceError, DomainError
from ..utils import make_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NewtonResult:
    point: np.ndarray
    x_norm: float
    rho: float
    iterations: int


def _hessian(flow: FlowDomain, point) -> np.ndarray:
    """Hessian in the integrator's local coordinates"""
    if flow.stratum.is_interior:
        return root_arrays(flow.chamber).hessian(point)

    return stratum_hessian(flow.stratum, point)


def _inside(flow: FlowDomain, point, guard: float) -> bool:
    margins = flow.margins(point)
    return not margins.size or float(np.min(margins)) > guard


def newton(flow: FlowDomain, start, maxiter: Optional[int] = None, tol: Optional[float] = None) -> NewtonResult:
    """
    Damped Newton iteration for the minimum of ``ρ`` on ``flow``

    Steps are halved until the iterate stays inside and either ``ρ`` or
    ``‖X‖`` goes down.

    Raises:
        ``ConvergenceError``: no convergence within ``maxiter`` iterations
    """
    config = settings()
    maxiter = maxiter or config["newton_maxiter"]
    tol = tol or config["fixed_point_tol"]
    guard = config["eps_pole"]

    z = flow.to_local(start)
    point = flow.to_point(z)
    rho = flow.potential(point)
    gradient = flow.local_field(z)
    x_norm = float(np.linalg.norm(gradient))

    for iteration in range(maxiter + 1):
        if x_norm <= tol:
            return NewtonResult(point, x_norm, rho, iteration)

        hessian = _hessian(flow, point)
        step = -np.linalg.solve(hessian, gradient)
        slope = float(gradient @ step)

        alpha = 1.0
        while alpha > 1e-20:
            candidate = z + alpha * step
            trial = flow.to_point(candidate)
            if _inside(flow, trial, guard):
                try:
                    trial_gradient = flow.local_field(candidate)
                    trial_rho = flow.potential(trial)
                except DomainError:
                    trial_gradient = None

                if trial_gradient is not None:
                    trial_norm = float(np.linalg.norm(trial_gradient))
                    if trial_rho <= rho + 1e-4 * alpha * slope or trial_norm < x_norm:
                        break

            alpha *= 0.5
        else:
            if x_norm <= 100 * tol:
                return NewtonResult(point, x_norm, rho, iteration)

            raise ConvergenceError(
                "Line search failed", iteration=iteration, x_norm=x_norm, point=tuple(point)
            )

        moved = alpha * float(np.linalg.norm(step))
        z, point, rho, gradient, x_norm = candidate, trial, trial_rho, trial_gradient, trial_norm
        logger.debug("newton %d: |X| = %.3g, step %.3g", iteration, x_norm, moved)

        if moved <= 1e-15 * max(1.0, float(np.linalg.norm(point))) and x_norm <= 100 * tol:
            return NewtonResult(point, x_norm, rho, iteration + 1)

    raise ConvergenceError(
        f"Newton did not converge in {maxiter} iterations",
        iterations=maxiter,
        x_norm=x_norm,
        point=tuple(point),
    )


def minimal_point(
    domain,
    stratum: Optional[Stratum] = None,
    start=None,
    multistart: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> np.ndarray:
    """
    Unique minimum of ``ρ`` on the open chamber, or of the restricted
    potential on a stratum

    Newton starts from the Chebyshev center (or ``start``) and is repeated
    from ``multistart`` random interior points, which must all land within
    ``1e-9`` of the first result.

    Raises:
        ``ConvergenceError``: Newton fails, or the restarts disagree
    """
    flow = FlowDomain(domain, stratum)
    if flow.stratum.is_vertex:
        return np.array(flow.stratum.affine_point)

    if start is None:
        start = flow.chamber.reference_point if flow.stratum.is_interior else flow.stratum.affine_point

    result = newton(flow, start)

    count = settings()["multistart"] if multistart is None else multistart
    if count:
        rng = rng or make_rng()
        for other in flow.stratum.sample(count, rng):
            again = newton(flow, other)
            distance = float(np.linalg.norm(again.point - result.point))
            if distance > 1e-9:
                raise ConvergenceError(
                    f"{flow.chamber.name}: restarts disagree by {distance:.3g}",
                    first=tuple(result.point),
                    other=tuple(again.point),
                )

    logger.info(
        "%s: minimal point %s on %s after %d iterations",
        flow.chamber.name,
        tuple(np.round(result.point, 12)),
        flow.stratum.describe(),
        result.iterations,
    )
    return result.point
