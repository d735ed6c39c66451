#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

import logging

import numpy as np

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .integrate import CollapseEvent, FlowOptions, Termination, Trajectory, integrate
from .newton import minimal_point
from ..meanfield import as_chamber
from ..rootsys import interior, locate
from ..types import ConvergenceError, DomainError, InvariantError

logger = logging.getLogger(__name__)


@dataclass
class Cascade:
    """Chain of collapses from one interior start"""

    events: List[CollapseEvent] = field(default_factory=list)
    segments: List[Tuple[Trajectory, Termination]] = field(default_factory=list)
    terminal: Optional[Termination] = None

    def __iter__(self):
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def __getitem__(self, index: int) -> CollapseEvent:
        return self.events[index]

    @property
    def final_point(self) -> np.ndarray:
        terminal = self.terminal
        return terminal.limit if isinstance(terminal, CollapseEvent) else terminal.point


def cascade(domain, start, options=None, strict: bool = True) -> Cascade:
    """
    Flows in the chamber, then on each stratum the flow collapses onto,
    until a stratum fixed point, a vertex or a timeout

    Raises:
        ``InvariantError``: more collapses than the rank allows
    """
    cham = as_chamber(domain)
    options = FlowOptions.build(options)

    result = Cascade()
    stratum, point = interior(cham), np.asarray(start, dtype=float)

    while True:
        trajectory, termination = integrate(cham, point, options, stratum=stratum, strict=strict)
        result.segments.append((trajectory, termination))

        if not isinstance(termination, CollapseEvent):
            result.terminal = termination
            break

        result.events.append(termination)
        if len(result.events) > cham.rank:
            raise InvariantError(
                f"{cham.name}: {len(result.events)} collapses exceed rank {cham.rank}"
            )

        logger.info(
            "%s: cascade step %d onto %s",
            cham.name,
            len(result.events),
            termination.stratum.describe(),
        )

        if termination.stratum.is_vertex:
            result.terminal = termination
            break

        stratum, point = termination.stratum, termination.limit

    return result


def backward_trace(domain, boundary_point, deltas, options=None) -> List[Trajectory]:
    """
    Reverse flows from points ``δ`` inside a facet point

    Each one must end within ``1e-6`` of the interior minimal point.

    Raises:
        ``DomainError``: ``boundary_point`` is not in the relative interior of a facet
        ``ConvergenceError``: a reverse flow ends away from the minimal point
    """
    cham = as_chamber(domain)
    boundary_point = np.asarray(boundary_point, dtype=float)

    facet = locate(cham, boundary_point)
    if facet.dim != cham.rank - 1:
        raise DomainError(
            f"{tuple(boundary_point)} is on a stratum of dimension {facet.dim}, not a facet"
        )

    outward = facet.active_constraints[0].array
    inward = -outward / np.linalg.norm(outward)
    target = minimal_point(cham)

    trajectories = []
    for delta in deltas:
        trajectory, termination = integrate(cham, boundary_point + delta * inward, options, direction=-1)
        end = trajectory.last.y
        distance = float(np.linalg.norm(end - target))
        if distance > 1e-6:
            raise ConvergenceError(
                f"Reverse flow from δ = {delta:g} ends {distance:.3g} away from the minimal point",
                delta=delta,
                end=tuple(end),
                termination=termination.kind,
            )

        logger.info("%s: reverse flow from δ = %g ends %.3g from w0", cham.name, delta, distance)
        trajectories.append(trajectory)

    return trajectories
