#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

"""
Fields and potentials restricted to a stratum

On a stratum the cot term of a root whose vertical wall is pinned, and the
tan term of a root whose horizontal wall is pinned, are singular and
dropped; what remains must be tangent to the stratum.
"""

import logging

import numpy as np

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from ..config import settings
from ..meanfield import as_chamber, root_arrays
from ..rootsys import ActionSpec, Chamber, Stratum, interior
from ..types import InvariantError

logger = logging.getLogger(__name__)

NORMAL_TOL = 1e-10
ROUNDING_FACTOR = 64.0


def _masks(stratum: Stratum) -> Tuple[np.ndarray, np.ndarray]:
    arrays = root_arrays(stratum.chamber)
    vertical, horizontal = arrays.vertical.copy(), arrays.horizontal.copy()

    for constraint in stratum.active_constraints:
        if constraint.kind.vertical:
            vertical[constraint.root_index] = False
        else:
            horizontal[constraint.root_index] = False

    return vertical, horizontal


def _resolve(domain: Union[ActionSpec, Chamber, Stratum, None], stratum: Optional[Stratum]) -> Stratum:
    if stratum is not None:
        return stratum

    if isinstance(domain, Stratum):
        return domain

    return interior(as_chamber(domain))


def normal_residual(stratum: Stratum, point) -> Tuple[np.ndarray, float]:
    """Unprojected restricted field and the norm of its normal part"""
    vertical, horizontal = _masks(stratum)
    full = root_arrays(stratum.chamber).field(point, vertical, horizontal)

    T = stratum.tangent_basis
    tangent = T @ (T.T @ full)
    return full, float(np.linalg.norm(full - tangent))


def normal_tolerance(stratum: Stratum, point, full) -> float:
    """
    Largest normal residual accepted at ``point``

    ``1e-10`` relative to the field, plus the rounding the cot and tan terms
    can produce there. Next to another wall the terms cancel with an error
    that grows like the square of the field.
    """
    vertical, horizontal = _masks(stratum)
    rounding = root_arrays(stratum.chamber).rounding_bound(point, vertical, horizontal)
    return NORMAL_TOL * max(1.0, float(np.linalg.norm(full))) + ROUNDING_FACTOR * rounding


def stratum_field(domain, stratum: Optional[Stratum] = None, point=None, strict: bool = True) -> np.ndarray:
    """
    Mean curvature field on ``stratum``, tangent to it

    Call as ``stratum_field(spec, stratum, Y)`` or ``stratum_field(stratum, point=Y)``.

    Raises:
        ``InvariantError``: the restricted field has a normal part above
            :func:`normal_tolerance`; with ``strict=False`` it is logged and projected away
        ``DomainError``: point off the stratum or outside its relative interior
    """
    stratum = _resolve(domain, stratum)
    point = np.asarray(point, dtype=float)
    stratum.require_interior(point, guard=settings()["eps_pole"])

    if stratum.is_vertex:
        return np.zeros(stratum.chamber.rank)

    full, residual = normal_residual(stratum, point)
    if residual > normal_tolerance(stratum, point, full):
        message = (
            f"{stratum.chamber.name}: field on {stratum.describe()} has normal part "
            f"{residual:.3g} at {tuple(np.round(point, 12))}"
        )
        if strict:
            raise InvariantError(message)

        logger.warning(message)

    T = stratum.tangent_basis
    return T @ (T.T @ full)


def stratum_potential(domain, stratum: Optional[Stratum] = None, point=None) -> float:
    """``ρ`` without the terms that are singular on ``stratum``"""
    stratum = _resolve(domain, stratum)
    point = np.asarray(point, dtype=float)
    stratum.require_interior(point, guard=settings()["eps_pole"])

    vertical, horizontal = _masks(stratum)
    return root_arrays(stratum.chamber).potential(point, vertical, horizontal)


def stratum_hessian(stratum: Stratum, point) -> np.ndarray:
    """Hessian of :func:`stratum_potential` in tangent coordinates"""
    vertical, horizontal = _masks(stratum)
    full = root_arrays(stratum.chamber).hessian(point, vertical, horizontal)
    T = stratum.tangent_basis
    return T.T @ full @ T


@dataclass(frozen=True)
class LocalWall:
    """Free constraints that bound the same face inside a stratum"""

    members: Tuple[int, ...]
    normal: np.ndarray
    multiplicity: int


class FlowDomain:
    """
    A stratum (or the open chamber) in the coordinates the integrator uses

    Points are ``Y = offset + basis·z``; for the open chamber ``z = Y``.
    """

    def __init__(self, domain, stratum: Optional[Stratum] = None, strict: bool = True):
        self.stratum = _resolve(domain, stratum)
        self.chamber = self.stratum.chamber
        self.strict = strict

        if self.stratum.is_interior:
            self.offset = np.zeros(self.chamber.rank)
            self.basis = np.eye(self.chamber.rank)
        else:
            self.offset = np.array(self.stratum.affine_point)
            self.basis = np.array(self.stratum.tangent_basis)

        self.free = self.stratum.free
        self._walls: Optional[List[LocalWall]] = None

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def to_point(self, z) -> np.ndarray:
        return self.offset + self.basis @ z

    def to_local(self, point) -> np.ndarray:
        return self.basis.T @ (np.asarray(point, dtype=float) - self.offset)

    def field(self, point) -> np.ndarray:
        if self.stratum.is_interior:
            self.chamber.require_interior(point, guard=settings()["eps_pole"])
            return root_arrays(self.chamber).field(point)

        return stratum_field(self.stratum, point=point, strict=self.strict)

    def local_field(self, z) -> np.ndarray:
        return self.basis.T @ self.field(self.to_point(z))

    def potential(self, point) -> float:
        if self.stratum.is_interior:
            return root_arrays(self.chamber).potential(point)

        return stratum_potential(self.stratum, point=point)

    def margins(self, point) -> np.ndarray:
        return self.chamber.b[self.free] - self.chamber.A[self.free] @ point

    def walls(self) -> List[LocalWall]:
        """Free constraints grouped by the hyperplane they cut out of the stratum"""
        if self._walls is not None:
            return self._walls

        groups: Dict[tuple, List[int]] = {}
        normals: Dict[tuple, np.ndarray] = {}
        for index in self.free:
            constraint = self.chamber.constraints[index]
            normal = self.basis.T @ constraint.array
            norm = np.linalg.norm(normal)
            if norm <= 1e-12:
                continue

            bound = constraint.bound - constraint.array @ self.offset
            key = tuple(np.round(np.append(normal / norm, bound / norm), 9))
            groups.setdefault(key, []).append(index)
            normals.setdefault(key, normal)

        self._walls = [
            LocalWall(
                members=tuple(members),
                normal=normals[key],
                multiplicity=sum(self.chamber.constraints[i].multiplicity for i in members),
            )
            for key, members in groups.items()
        ]
        return self._walls

    def wall_of(self, index: int) -> Optional[LocalWall]:
        return next((wall for wall in self.walls() if index in wall.members), None)
