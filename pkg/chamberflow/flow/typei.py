#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

"""
Blow-up model at a wall

Close to a wall with effective multiplicity ``m`` the margin obeys

    margin² ≈ 2·m·‖β₀♯‖²·(T − t)

so a straight-line fit of margin² against time gives the collapse time
``T``, the rate ``2·m·‖β₀♯‖²`` and the type-I constant ``1/(2m)``.
"""

import logging

import numpy as np

from dataclasses import dataclass
from typing import Optional, Sequence

from ..config import settings
from ..types import ConvergenceError, DomainError, UnsupportedError

logger = logging.getLogger(__name__)


def tail_offsets(steps: Sequence[float]) -> np.ndarray:
    """
    Times of the tail samples relative to the last one, summed from the
    step sizes so no ``t_i − t_j`` cancellation happens near the collapse
    """
    steps = np.asarray(steps, dtype=float)
    return -np.concatenate([np.cumsum(steps[::-1])[::-1], [0.0]])


@dataclass(frozen=True)
class BlowupFit:
    T_est: float
    intercept: float
    slope: float
    remaining: float
    samples: int

    @property
    def rate(self) -> float:
        return -self.slope


def fit_blowup(trajectory, constraint, window: Optional[int] = None) -> BlowupFit:
    """
    Least-squares line through ``(τ, margin²)`` over the last ``window`` samples

    Raises:
        ``ConvergenceError``: too few samples, or margin² is not decreasing
    """
    if window is None:
        window = settings()["fit_window"]

    samples = trajectory.samples[-window:]
    steps = trajectory.steps[len(trajectory.steps) - (len(samples) - 1):]
    if len(samples) < 3:
        raise ConvergenceError("Too few steps to fit the blow-up", samples=len(samples))

    tau = tail_offsets(steps)
    squares = np.array([constraint.margin(s.y) ** 2 for s in samples])

    slope, intercept = np.polyfit(tau, squares, 1)
    if slope >= 0:
        raise ConvergenceError(
            "margin² does not decrease along the tail", slope=float(slope)
        )

    remaining = -intercept / slope
    return BlowupFit(
        T_est=trajectory.samples[-1].t + remaining,
        intercept=float(intercept),
        slope=float(slope),
        remaining=float(remaining),
        samples=len(samples),
    )


@dataclass(frozen=True)
class TypeIEstimate:
    est: float
    theory: float
    shape_est: Optional[float] = None
    rate: Optional[float] = None

    @property
    def relative_error(self) -> float:
        return abs(self.est - self.theory) / self.theory


def shape_extrapolation(trajectory, fit: BlowupFit, sup_norm, window: Optional[int] = None) -> Optional[float]:
    """``sup‖A‖²·(T − t)`` along the tail, extrapolated to ``t = T``"""
    if window is None:
        window = settings()["fit_window"]

    samples = trajectory.samples[-window:]
    steps = trajectory.steps[len(trajectory.steps) - (len(samples) - 1):]
    remaining = fit.remaining - tail_offsets(steps)

    try:
        values = np.array([sup_norm(s.y) ** 2 for s in samples]) * remaining
    except DomainError:
        return None

    slope, intercept = np.polyfit(remaining, values, 1)
    return float(intercept)


def type_I_estimate(trajectory, event, window: Optional[int] = None) -> TypeIEstimate:
    """
    Type-I constant of a codimension-one collapse

    Raises:
        ``UnsupportedError``: corner collapse
    """
    if event.corner:
        raise UnsupportedError("Type-I estimate is not defined for a corner collapse")

    constraint = event.chamber.constraints[event.primary]
    fit = fit_blowup(trajectory, constraint, window)

    shape = None
    if event.sup_norm is not None:
        shape = shape_extrapolation(trajectory, fit, event.sup_norm, window)

    estimate = TypeIEstimate(
        est=event.norm_sq / fit.rate,
        theory=1.0 / (2 * event.multiplicity),
        shape_est=shape,
        rate=fit.rate,
    )
    logger.debug(
        "type-I %.6g (theory %.6g), rate %.6g", estimate.est, estimate.theory, fit.rate
    )
    return estimate
