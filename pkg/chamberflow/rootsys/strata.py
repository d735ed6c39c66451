#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

import logging

import numpy as np

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import FrozenSet, List, Optional, Tuple

from scipy.linalg import null_space
from scipy.optimize import linprog

from .chamber import Chamber, Constraint, bounding_box, chebyshev_center, sample_points
from ..types import DomainError

logger = logging.getLogger(__name__)

TOL = 1e-9


def _normalize(basis: np.ndarray) -> np.ndarray:
    """Flips every column so its first nonzero entry is positive"""
    basis = np.array(basis, dtype=float)
    for column in range(basis.shape[1]):
        nonzero = np.flatnonzero(np.abs(basis[:, column]) > 1e-12)
        if nonzero.size and basis[nonzero[0], column] < 0:
            basis[:, column] *= -1

    return basis


@dataclass(frozen=True, eq=False)
class Stratum:
    """
    Face of a chamber

    Attributes:
        chamber: the chamber it bounds
        indices: constraints pinned to their bound (empty for the open chamber)
        affine_point: a relative-interior point
        tangent_basis: orthonormal columns spanning the tangent space
    """

    chamber: Chamber = field(repr=False)
    indices: FrozenSet[int]
    affine_point: np.ndarray = field(repr=False)
    tangent_basis: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.tangent_basis.shape[1]

    @property
    def is_vertex(self) -> bool:
        return self.dim == 0

    @property
    def is_interior(self) -> bool:
        return not self.indices

    @property
    def active(self) -> FrozenSet[Tuple[int, str]]:
        return frozenset(self.chamber.constraints[i].key for i in self.indices)

    @property
    def active_constraints(self) -> List[Constraint]:
        return [self.chamber.constraints[i] for i in sorted(self.indices)]

    @property
    def free(self) -> List[int]:
        return [i for i in range(len(self.chamber.constraints)) if i not in self.indices]

    def describe(self) -> str:
        if self.is_interior:
            return "interior"

        return " ∧ ".join(str(c).replace("<", "=").replace(">", "=") for c in self.active_constraints)

    def __repr__(self) -> str:
        return f"<Stratum dim={self.dim} {self.describe()}>"

    def project(self, point) -> np.ndarray:
        """Orthogonal projection onto the affine hull"""
        T = self.tangent_basis
        offset = np.asarray(point, dtype=float) - self.affine_point
        return self.affine_point + T @ (T.T @ offset)

    def to_local(self, point) -> np.ndarray:
        return self.tangent_basis.T @ (np.asarray(point, dtype=float) - self.affine_point)

    def from_local(self, z) -> np.ndarray:
        return self.affine_point + self.tangent_basis @ np.asarray(z, dtype=float)

    def margins(self, point) -> np.ndarray:
        """Margins of the constraints that are not pinned"""
        free = self.free
        return self.chamber.b[free] - self.chamber.A[free] @ np.asarray(point, dtype=float)

    def min_margin(self, point) -> float:
        margins = self.margins(point)
        return float(np.min(margins)) if margins.size else np.inf

    def contains(self, point, tol: float = 0.0) -> bool:
        """Relative-interior membership; pinned constraints must hold to ``TOL``"""
        point = np.asarray(point, dtype=float)
        pinned = [self.chamber.constraints[i].margin(point) for i in self.indices]
        return all(abs(m) <= TOL for m in pinned) and bool(np.all(self.margins(point) > tol))

    def require_interior(self, point, guard: float = 0.0):
        point = np.asarray(point, dtype=float)
        for i in self.indices:
            margin = self.chamber.constraints[i].margin(point)
            if abs(margin) > 1e-8:
                raise DomainError(
                    f"Point is off the stratum {self.describe()} (margin {margin:.3g})",
                    constraint=self.chamber.constraints[i],
                    margin=margin,
                )

        margins = self.margins(point)
        if margins.size:
            index = int(np.argmin(margins))
            if margins[index] <= guard:
                constraint = self.chamber.constraints[self.free[index]]
                raise DomainError(
                    f"Point leaves the stratum {self.describe()} through {constraint}",
                    constraint=constraint,
                    margin=float(margins[index]),
                )

    def local_system(self) -> Tuple[np.ndarray, np.ndarray]:
        """Free constraints written in tangent coordinates: ``A_z·z < b_z``"""
        free = self.free
        A = self.chamber.A[free] @ self.tangent_basis
        b = self.chamber.b[free] - self.chamber.A[free] @ self.affine_point
        return A, b

    @cached_property
    def local_geometry(self) -> Tuple[np.ndarray, float]:
        """Bounding box and Chebyshev radius in tangent coordinates"""
        A, b = self.local_system()
        _, radius = chebyshev_center(A, b)
        return bounding_box(A, b), radius

    def sample(
        self, n: int, rng: np.random.Generator, margin: Optional[float] = None
    ) -> np.ndarray:
        """Relative-interior points, ``margin`` away from every free wall"""
        if self.is_interior:
            return self.chamber.sample(n, rng, margin)

        if self.is_vertex:
            return np.repeat(self.affine_point[None, :], n, axis=0)

        box, radius = self.local_geometry
        if margin is None:
            A, _ = self.local_system()
            norms = np.linalg.norm(A, axis=1)
            smallest = float(np.min(norms[norms > 1e-12])) if np.any(norms > 1e-12) else 1.0
            margin = min(self.chamber.sample_margin(), 0.5 * radius * smallest)

        free = self.free
        return sample_points(
            self.chamber.A[free],
            self.chamber.b[free],
            box,
            n,
            rng,
            margin,
            offset=self.affine_point,
            basis=self.tangent_basis,
        )


def interior(chamber: Chamber) -> Stratum:
    """The open chamber itself, as the top-dimensional stratum"""
    return Stratum(
        chamber=chamber,
        indices=frozenset(),
        affine_point=np.array(chamber.reference_point),
        tangent_basis=np.eye(chamber.rank),
    )


def _closure(A, b, subset, point, basis) -> Optional[FrozenSet[int]]:
    closure = set(subset)
    for j in range(len(b)):
        if j in closure:
            continue

        # a_j in the row space of the subset: its functional is constant on the affine hull
        if basis.size and np.linalg.norm(basis.T @ A[j]) > TOL * np.linalg.norm(A[j]):
            continue

        margin = b[j] - A[j] @ point
        if abs(margin) <= TOL:
            closure.add(j)
        elif margin < 0:
            return None

    return frozenset(closure)


def _relative_center(A, b, norms, closure) -> Optional[np.ndarray]:
    dim = A.shape[1]
    pinned = sorted(closure)
    others = [j for j in range(len(b)) if j not in closure]

    c = np.zeros(dim + 1)
    c[-1] = -1.0

    result = linprog(
        c,
        A_ub=np.hstack([A[others], norms[others, None]]),
        b_ub=b[others],
        A_eq=np.hstack([A[pinned], np.zeros((len(pinned), 1))]),
        b_eq=b[pinned],
        bounds=[(None, None)] * dim + [(None, 1.0)],
        method="highs",
    )

    if result.status != 0 or result.x[-1] <= TOL:
        return None

    return np.asarray(result.x[:-1], dtype=float)


@lru_cache(maxsize=None)
def strata(chamber: Chamber) -> Tuple[Stratum, ...]:
    """
    Every face of dimension ``0 .. rank-1`` with a nonempty relative interior,
    highest dimension first
    """
    A, b = chamber.A, chamber.b
    norms = np.linalg.norm(A, axis=1)
    found, seen = [], set()

    for size in range(1, chamber.rank + 1):
        for subset in combinations(range(len(b)), size):
            rows = list(subset)
            point, *_ = np.linalg.lstsq(A[rows], b[rows], rcond=None)
            if np.linalg.norm(A[rows] @ point - b[rows]) > TOL:
                continue

            basis = null_space(A[rows])
            closure = _closure(A, b, subset, point, basis)
            if closure is None or closure in seen:
                continue

            seen.add(closure)
            center = _relative_center(A, b, norms, closure)
            if center is None:
                continue

            found.append(
                Stratum(
                    chamber=chamber,
                    indices=closure,
                    affine_point=center,
                    tangent_basis=_normalize(basis),
                )
            )

    found.sort(key=lambda stratum: (-stratum.dim, sorted(stratum.indices)))
    logger.debug(
        "%s: %s",
        chamber.name,
        ", ".join(
            f"{sum(s.dim == d for s in found)} of dim {d}" for d in range(chamber.rank)
        ),
    )
    return tuple(found)


def facets(chamber: Chamber) -> List[Stratum]:
    return [s for s in strata(chamber) if s.dim == chamber.rank - 1]


def vertices(chamber: Chamber) -> List[Stratum]:
    return [s for s in strata(chamber) if s.is_vertex]


def locate(chamber: Chamber, point, tol: float = 1e-9) -> Stratum:
    """
    Stratum whose relative interior holds ``point``

    Raises:
        ``DomainError``: point outside the closed chamber or on no known face
    """
    point = np.asarray(point, dtype=float)
    margins = chamber.margins(point)
    index = int(np.argmin(margins))
    if margins[index] < -tol:
        raise DomainError(
            f"Point lies outside the chamber ({chamber.constraints[index]})",
            constraint=chamber.constraints[index],
            margin=float(margins[index]),
        )

    tight = frozenset(int(i) for i in np.flatnonzero(np.abs(margins) <= tol))
    if not tight:
        return interior(chamber)

    for stratum in strata(chamber):
        if stratum.indices == tight:
            return stratum

    raise DomainError(f"No stratum has active set {sorted(tight)}")
