#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

import logging

import numpy as np

from dataclasses import asdict, dataclass, field, fields
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Tuple, Union

from .rk import RKDP54, ExplicitRungeKutta
from .stratum import FlowDomain
from .typei import fit_blowup, type_I_estimate
from ..config import settings
from ..meanfield import shape_sup_norm
from ..rootsys import Chamber, Stratum, locate
from ..types import ConvergenceError, DomainError, StepSizeUnderflow

logger = logging.getLogger(__name__)


@dataclass
class FlowOptions:
    """Integrator knobs; unset values come from :func:`chamberflow.settings`"""

    rtol: float = None
    atol: float = None
    wall_eps: float = None
    corner_eps: float = None
    max_time: float = None
    max_steps: int = None
    h_min: float = None
    fixed_point_tol: float = None
    fit_window: int = None
    h0: Optional[float] = None

    def __post_init__(self):
        config = settings()
        for item in fields(self):
            if getattr(self, item.name) is None and item.name != "h0":
                setattr(self, item.name, config[item.name])

    @classmethod
    def build(cls, options: Union["FlowOptions", Dict[str, Any], None] = None, **overrides) -> "FlowOptions":
        if isinstance(options, FlowOptions):
            values = asdict(options)
        else:
            values = dict(options or {})

        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True)
class Sample:
    t: float
    y: np.ndarray
    rho: float
    x_norm: float

    def to_record(self) -> Dict[str, Any]:
        return {"t": self.t, "y": list(self.y), "rho": self.rho, "x_norm": self.x_norm}


@dataclass
class Trajectory:
    """
    Accepted states of one integration

    ``steps[i]`` is the step that led from ``samples[i]`` to ``samples[i + 1]``.
    """

    samples: List[Sample] = field(default_factory=list)
    steps: List[float] = field(default_factory=list)
    stats: Dict[str, int] = field(default_factory=lambda: {"accepted": 0, "rejected": 0, "domain": 0, "evaluations": 0})
    direction: int = 1

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples])

    @property
    def points(self) -> np.ndarray:
        return np.array([s.y for s in self.samples])

    @property
    def rhos(self) -> np.ndarray:
        return np.array([s.rho for s in self.samples])

    @property
    def x_norms(self) -> np.ndarray:
        return np.array([s.x_norm for s in self.samples])

    @property
    def last(self) -> Sample:
        return self.samples[-1]

    def to_records(self) -> List[Dict[str, Any]]:
        return [sample.to_record() for sample in self.samples]


@dataclass
class CollapseEvent:
    """
    Finite-time collapse onto a lower stratum

    ``primary`` is the constraint with the smallest margin at the handoff,
    ``wall`` every free constraint on its hyperplane.
    """

    T_est: float
    limit: np.ndarray
    active: FrozenSet[Tuple[int, str]]
    stratum_dim: int
    blowup_rate_est: Optional[float]
    type_I_est: Optional[float]
    type_I_theory: Optional[float]
    wall: Tuple[int, ...] = ()
    primary: int = -1
    corner: bool = False
    multiplicity: int = 0
    norm_sq: float = 0.0
    shape_est: Optional[float] = None
    chamber: Chamber = field(default=None, repr=False)
    stratum: Stratum = field(default=None, repr=False)
    source: Stratum = field(default=None, repr=False)
    sup_norm: Optional[Callable] = field(default=None, repr=False)

    kind = "collapse"

    def to_record(self) -> Dict[str, Any]:
        return {
            "event": self.kind,
            "T_est": self.T_est,
            "limit": list(self.limit),
            "active": sorted([list(key) for key in self.active]),
            "stratum_dim": self.stratum_dim,
            "blowup_rate_est": self.blowup_rate_est,
            "type_I_est": self.type_I_est,
            "type_I_theory": self.type_I_theory,
        }


@dataclass
class FixedPoint:
    point: np.ndarray
    t: float
    x_norm: float
    stratum: Stratum = field(default=None, repr=False)

    kind = "fixed_point"

    def to_record(self) -> Dict[str, Any]:
        return {"event": self.kind, "t": self.t, "point": list(self.point), "x_norm": self.x_norm}


@dataclass
class Timeout:
    point: np.ndarray
    t: float
    reason: str
    stratum: Stratum = field(default=None, repr=False)

    kind = "timeout"

    def to_record(self) -> Dict[str, Any]:
        return {"event": self.kind, "t": self.t, "point": list(self.point), "reason": self.reason}


Termination = Union[CollapseEvent, FixedPoint, Timeout]


class _Clock:
    """Kahan-compensated flow time"""

    def __init__(self):
        self.t = 0.0
        self._carry = 0.0

    def advance(self, h: float) -> float:
        y = h - self._carry
        t = self.t + y
        self._carry = (t - self.t) - y
        self.t = t
        return t


def _error_norm(error: np.ndarray, y: np.ndarray, y_new: np.ndarray, options: FlowOptions) -> float:
    scale = options.atol + options.rtol * np.maximum(np.abs(y), np.abs(y_new))
    return float(np.sqrt(np.mean((error / scale) ** 2)))


def _collapse(domain: FlowDomain, trajectory: Trajectory, options: FlowOptions) -> CollapseEvent:
    cham = domain.chamber
    point = trajectory.last.y
    margins = domain.margins(point)
    primary = domain.free[int(np.argmin(margins))]

    near = {index for index, margin in zip(domain.free, margins) if margin <= options.corner_eps}
    walls = [wall for wall in domain.walls() if near & set(wall.members)]
    corner = len(walls) >= 2
    wall = domain.wall_of(primary)

    # limit: projection onto every hyperplane the point sits on
    pinned = sorted(domain.stratum.indices | near)
    A, b = cham.A[pinned], cham.b[pinned]
    shift, *_ = np.linalg.lstsq(A, A @ point - b, rcond=None)
    limit = point - shift

    target = locate(cham, limit, tol=1e-9)
    flow_basis = domain.basis

    event = CollapseEvent(
        T_est=np.nan,
        limit=limit,
        active=target.active,
        stratum_dim=target.dim,
        blowup_rate_est=None,
        type_I_est=None,
        type_I_theory=None,
        wall=wall.members if wall else (primary,),
        primary=primary,
        corner=corner,
        multiplicity=wall.multiplicity if wall else cham.constraints[primary].multiplicity,
        norm_sq=float(np.sum((flow_basis.T @ cham.A[primary]) ** 2)),
        chamber=cham,
        stratum=target,
        source=domain.stratum,
        sup_norm=(lambda y: shape_sup_norm(cham, y)) if domain.stratum.is_interior else None,
    )

    fit = fit_blowup(trajectory, cham.constraints[primary], options.fit_window)
    event.T_est = fit.T_est
    event.blowup_rate_est = fit.rate

    if not corner:
        estimate = type_I_estimate(trajectory, event, options.fit_window)
        event.type_I_est = estimate.est
        event.type_I_theory = estimate.theory
        event.shape_est = estimate.shape_est

    logger.info(
        "%s: collapse onto %s at T ≈ %.12g%s",
        cham.name,
        target.describe(),
        event.T_est,
        " (corner)" if corner else f", type-I {event.type_I_est:.6g} / {event.type_I_theory:.6g}",
    )
    return event


def integrate(
    domain: Union[Chamber, Stratum, Any],
    start,
    options: Union[FlowOptions, Dict[str, Any], None] = None,
    direction: int = 1,
    stratum: Optional[Stratum] = None,
    strict: bool = True,
    method: Optional[ExplicitRungeKutta] = None,
) -> Tuple[Trajectory, Termination]:
    """
    Integrates ``ξ' = ±X(ξ)`` from ``start``

    Args:
        domain: catalog row, chamber or stratum; strata use the restricted field
        start: starting point in chamber coordinates
        options: :class:`FlowOptions` or a mapping of overrides
        direction (``int``): ``1`` for the mean curvature flow, ``-1`` for its reverse
        stratum (``Stratum``, optional): stratum of ``domain`` to flow on
        strict (``bool``): whether a normal field component raises

    Returns:
        ``(Trajectory, CollapseEvent | FixedPoint | Timeout)``

    Raises:
        ``DomainError``: start outside the domain
        ``StepSizeUnderflow``: the step collapsed before the wall threshold
    """
    options = FlowOptions.build(options)
    flow = FlowDomain(domain, stratum, strict=strict)
    method = method or RKDP54()
    sign = 1.0 if direction >= 0 else -1.0

    start = np.asarray(start, dtype=float)
    if not flow.stratum.is_interior:
        start = flow.stratum.project(start)

    if flow.stratum.is_interior:
        flow.chamber.require_interior(start, guard=settings()["eps_pole"])
    else:
        flow.stratum.require_interior(start, guard=settings()["eps_pole"])

    trajectory = Trajectory(direction=int(sign))
    clock = _Clock()

    def func(z):
        trajectory.stats["evaluations"] += 1
        return sign * flow.local_field(z)

    z = flow.to_local(start)
    point = flow.to_point(z)
    k = func(z)
    x_norm = float(np.linalg.norm(k))
    trajectory.samples.append(Sample(0.0, point, flow.potential(point), x_norm))

    if flow.dim == 0 or x_norm <= options.fixed_point_tol:
        logger.info("%s: fixed point at %s", flow.chamber.name, tuple(point))
        return trajectory, FixedPoint(point, 0.0, x_norm, flow.stratum)

    margins = flow.margins(point)
    h = options.h0 or min(1.0, 0.01 * float(np.min(margins)) / x_norm)
    previous_error = 1.0

    while True:
        attempts = trajectory.stats["accepted"] + trajectory.stats["rejected"]
        if attempts >= options.max_steps:
            return trajectory, Timeout(point, clock.t, "max_steps", flow.stratum)

        if clock.t >= options.max_time:
            return trajectory, Timeout(point, clock.t, "max_time", flow.stratum)

        if h < options.h_min:
            raise StepSizeUnderflow(
                f"{flow.chamber.name}: step {h:.3g} below h_min at t = {clock.t:.17g}",
                t=clock.t,
                y=tuple(point),
                h=h,
                min_margin=float(np.min(flow.margins(point))),
            )

        h = min(h, options.max_time - clock.t)

        try:
            z_new, error, k_new = method.step(func, z, h, k)
        except DomainError as failure:
            trajectory.stats["domain"] += 1
            trajectory.stats["rejected"] += 1
            logger.debug("Stage left the domain (%s), h %.3g -> %.3g", failure, h, h / 4)
            h *= 0.25
            continue

        err = _error_norm(error, z, z_new, options)
        if err > 1.0:
            trajectory.stats["rejected"] += 1
            h *= max(0.2, 0.9 * err ** (-method.error_exponent))
            continue

        z, k = z_new, k_new
        t = clock.advance(h)
        point = flow.to_point(z)
        x_norm = float(np.linalg.norm(k))

        trajectory.stats["accepted"] += 1
        trajectory.steps.append(h)
        trajectory.samples.append(Sample(t, point, flow.potential(point), x_norm))

        if err == 0:
            factor = 5.0
        else:
            factor = 0.9 * err ** (-0.7 * method.error_exponent) * previous_error ** (0.4 * method.error_exponent)
            factor = min(5.0, max(0.2, factor))

        previous_error = max(err, 1e-4)
        h *= factor

        margins = flow.margins(point)
        if margins.size and float(np.min(margins)) < options.wall_eps:
            if sign < 0:
                raise ConvergenceError("Reverse flow reached a wall", t=t, y=tuple(point))

            return trajectory, _collapse(flow, trajectory, options)

        if x_norm <= options.fixed_point_tol:
            logger.info("%s: fixed point reached at t = %.12g", flow.chamber.name, t)
            return trajectory, FixedPoint(point, t, x_norm, flow.stratum)
