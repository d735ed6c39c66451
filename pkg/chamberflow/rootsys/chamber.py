#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

"""
Chamber of a catalog row

Every constraint is linear in chamber coordinates and is stored as
``a·Y < b``; its margin ``b − a·Y`` is measured in functional units.
"""

import enum
import logging
import math

import numpy as np

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from scipy.optimize import linprog

from .catalog import ActionSpec, MarkedRoot
from ..types import CatalogError, DomainError

logger = logging.getLogger(__name__)


class ConstraintKind(str, enum.Enum):
    V_LOWER = "V_lower"
    V_UPPER = "V_upper"
    H_LOWER = "H_lower"
    H_UPPER = "H_upper"

    @property
    def vertical(self) -> bool:
        return self in (ConstraintKind.V_LOWER, ConstraintKind.V_UPPER)


# kind -> (sign of β in the normal, bound)
_SHAPES = {
    ConstraintKind.V_LOWER: (-1.0, 0.0),
    ConstraintKind.V_UPPER: (1.0, math.pi),
    ConstraintKind.H_LOWER: (-1.0, math.pi / 2),
    ConstraintKind.H_UPPER: (1.0, math.pi / 2),
}


@dataclass(frozen=True)
class Constraint:
    root_index: int
    kind: ConstraintKind
    normal: Tuple[float, ...]
    bound: float
    multiplicity: int
    label: str = ""

    @property
    def key(self) -> Tuple[int, str]:
        return self.root_index, self.kind.value

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.normal, dtype=float)

    def margin(self, point) -> float:
        return float(self.bound - np.dot(self.normal, point))

    def describe(self) -> str:
        root = self.label or f"root {self.root_index}"
        return {
            ConstraintKind.V_LOWER: f"{root} > 0",
            ConstraintKind.V_UPPER: f"{root} < π",
            ConstraintKind.H_LOWER: f"{root} > −π/2",
            ConstraintKind.H_UPPER: f"{root} < π/2",
        }[self.kind]

    def __str__(self) -> str:
        return self.describe()


def constraints_of(roots: Sequence[MarkedRoot]) -> Tuple[Constraint, ...]:
    """Both V bounds of every vertical root, both H bounds of every horizontal one"""
    result = []
    for index, root in enumerate(roots):
        kinds = []
        if root.vertical:
            kinds += [ConstraintKind.V_LOWER, ConstraintKind.V_UPPER]
        if root.horizontal:
            kinds += [ConstraintKind.H_LOWER, ConstraintKind.H_UPPER]

        for kind in kinds:
            sign, bound = _SHAPES[kind]
            result.append(
                Constraint(
                    root_index=index,
                    kind=kind,
                    normal=tuple(sign * x for x in root.vector),
                    bound=bound,
                    multiplicity=root.m_V if kind.vertical else root.m_H,
                    label=root.label,
                )
            )

    return tuple(result)


def orient(spec: ActionSpec) -> Tuple[MarkedRoot, ...]:
    """
    Signs of the vertical roots

    A row with a ``witness`` point gets the signs that put the witness inside
    the chamber; other rows keep the catalog signs.
    """
    spec.require_concrete()
    if spec.witness is None:
        return spec.roots

    roots = []
    for root in spec.roots:
        value = root(spec.witness)
        if root.vertical and value == 0:
            raise CatalogError(f"{spec.name}: witness lies on the wall of {root.label}")

        roots.append(root.negated() if root.vertical and value < 0 else root)

    return tuple(roots)


def chebyshev_center(A: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    Center and radius of the largest ball inside ``A·Y <= b``

    Raises:
        ``CatalogError``: empty interior or unbounded system
    """
    rows, dim = A.shape
    norms = np.linalg.norm(A, axis=1)

    c = np.zeros(dim + 1)
    c[-1] = -1.0

    result = linprog(
        c,
        A_ub=np.hstack([A, norms[:, None]]),
        b_ub=b,
        bounds=[(None, None)] * dim + [(0, None)],
        method="highs",
    )

    if result.status == 3:
        raise CatalogError("Chamber is unbounded")

    if result.status != 0:
        raise CatalogError(f"Chamber is empty ({result.message})")

    radius = float(result.x[-1])
    if radius <= 0:
        raise CatalogError("Chamber has empty interior")

    return np.asarray(result.x[:-1], dtype=float), radius


def bounding_box(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Coordinate ranges, one ``[low, high]`` row per axis"""
    dim = A.shape[1]
    box = np.empty((dim, 2))

    for axis in range(dim):
        for side, sign in enumerate((1.0, -1.0)):
            c = np.zeros(dim)
            c[axis] = sign
            result = linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * dim, method="highs")
            if result.status != 0:
                raise CatalogError(f"Chamber is unbounded along axis {axis}")

            box[axis, side] = result.x[axis]

    return box


def sample_points(
    A: np.ndarray,
    b: np.ndarray,
    box: np.ndarray,
    n: int,
    rng: np.random.Generator,
    margin: float = 0.0,
    offset: Optional[np.ndarray] = None,
    basis: Optional[np.ndarray] = None,
    max_tries: int = 10000,
) -> np.ndarray:
    """
    Rejection sampling of points with ``b − A·Y >= margin``

    With ``offset`` and ``basis`` the draw happens in the coordinates ``z``
    of ``Y = offset + basis·z``; ``box`` then bounds ``z``.
    """
    dim = box.shape[0]
    accepted: List[np.ndarray] = []

    for _ in range(max_tries):
        if len(accepted) >= n:
            break

        batch = rng.uniform(box[:, 0], box[:, 1], size=(max(4 * n, 16), dim))
        points = batch if basis is None else offset + batch @ basis.T
        ok = np.all(b - points @ A.T >= margin, axis=1)
        accepted.extend(points[ok])

    if len(accepted) < n:
        raise CatalogError(f"Could only draw {len(accepted)} of {n} interior points")

    return np.array(accepted[:n])


@dataclass(frozen=True)
class Wall:
    """Hyperplane shared by one or more constraints"""

    normal: Tuple[float, ...]
    bound: float
    members: Tuple[int, ...]


class Chamber:
    """
    Open polytope ``A·Y < b`` of a catalog row

    Attributes:
        spec: the row
        roots: its roots after orientation
        constraints: one entry per (root, kind)
        reference_point: Chebyshev center of the linear system
        radius: Chebyshev radius
    """

    def __init__(self, spec: ActionSpec):
        self.spec = spec
        self.roots = orient(spec)
        self.constraints = constraints_of(self.roots)

        self.A = np.array([c.normal for c in self.constraints], dtype=float)
        self.b = np.array([c.bound for c in self.constraints], dtype=float)
        self.A.setflags(write=False)
        self.b.setflags(write=False)

        center, self.radius = chebyshev_center(self.A, self.b)
        self.box = bounding_box(self.A, self.b)
        self.reference_point = center
        self.reference_point.setflags(write=False)
        self.box.setflags(write=False)

        logger.debug(
            "Chamber of %s: %d constraints, radius %.6g",
            spec.name,
            len(self.constraints),
            self.radius,
        )

    def __repr__(self) -> str:
        return f"<Chamber {self.spec.name}: {len(self.constraints)} constraints>"

    @property
    def rank(self) -> int:
        return self.A.shape[1]

    @property
    def name(self) -> str:
        return self.spec.name

    def margins(self, point) -> np.ndarray:
        return self.b - self.A @ np.asarray(point, dtype=float)

    def min_margin(self, point) -> float:
        return float(np.min(self.margins(point)))

    def contains(self, point, tol: float = 0.0) -> bool:
        return bool(np.all(self.margins(point) > tol))

    def require_interior(self, point, guard: float = 0.0):
        """
        Raises:
            ``DomainError``: carrying the constraint with the smallest margin
        """
        margins = self.margins(point)
        index = int(np.argmin(margins))
        if margins[index] <= guard:
            constraint = self.constraints[index]
            raise DomainError(
                f"Point {tuple(np.round(np.asarray(point, dtype=float), 12))} "
                f"violates {constraint} (margin {margins[index]:.3g})",
                constraint=constraint,
                margin=float(margins[index]),
            )

    def sample_margin(self, safety: Optional[float] = None) -> float:
        if safety is None:
            from ..config import settings

            safety = settings()["safety_margin"]

        return min(safety, 0.5 * self.radius * float(np.min(np.linalg.norm(self.A, axis=1))))

    def sample(
        self, n: int, rng: np.random.Generator, margin: Optional[float] = None
    ) -> np.ndarray:
        """Uniform interior points at least ``margin`` away from every wall"""
        if margin is None:
            margin = self.sample_margin()

        return sample_points(self.A, self.b, np.asarray(self.box), n, rng, margin)

    def walls(self) -> List[Wall]:
        """Constraints grouped by the hyperplane they bound"""
        groups: Dict[Tuple, List[int]] = {}
        planes: Dict[Tuple, Tuple[np.ndarray, float]] = {}

        for index, constraint in enumerate(self.constraints):
            norm = np.linalg.norm(constraint.normal)
            normal = np.asarray(constraint.normal) / norm
            bound = constraint.bound / norm
            key = tuple(np.round(np.append(normal, bound), 9))
            groups.setdefault(key, []).append(index)
            planes.setdefault(key, (normal, bound))

        return [
            Wall(tuple(planes[key][0]), float(planes[key][1]), tuple(members))
            for key, members in groups.items()
        ]

    def wall_of(self, index: int) -> Wall:
        return next(wall for wall in self.walls() if index in wall.members)

    def effective_multiplicity(self, index: int) -> int:
        """Sum of the multiplicities of every term singular on the wall of ``index``"""
        return sum(self.constraints[i].multiplicity for i in self.wall_of(index).members)


@lru_cache(maxsize=None)
def chamber(spec: ActionSpec) -> Chamber:
    """
    Chamber of a concrete row, cached per row

    Raises:
        ``CatalogError``: row not instantiated, empty or unbounded interior
    """
    spec.require_concrete()
    try:
        return Chamber(spec)
    except CatalogError as error:
        raise CatalogError(f"{spec.name}: {error}")
