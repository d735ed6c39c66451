#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

"""
Mean curvature of the principal orbits in chamber coordinates

    X(Y) = −Σ m_V cot β(Y) β♯ + Σ m_H tan β(Y) β♯
    ρ(Y) = −Σ m_V log sin β(Y) − Σ m_H log cos β(Y)

``X`` is the gradient of ``ρ``; both come out of :class:`RootArrays` so the
two can never drift apart.
"""

import numpy as np

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple, Union

from ..config import settings
from ..rootsys import ActionSpec, Chamber, chamber
from ..types import DomainError

Domain = Union[ActionSpec, Chamber]


def as_chamber(domain: Domain) -> Chamber:
    return domain if isinstance(domain, Chamber) else chamber(domain)


@dataclass(frozen=True, eq=False)
class RootArrays:
    """Oriented roots of a chamber stacked for vectorized evaluation"""

    vectors: np.ndarray
    m_V: np.ndarray
    m_H: np.ndarray
    labels: Tuple[str, ...]

    @property
    def vertical(self) -> np.ndarray:
        return self.m_V > 0

    @property
    def horizontal(self) -> np.ndarray:
        return self.m_H > 0

    def _masks(self, vertical, horizontal):
        return (
            self.vertical if vertical is None else vertical,
            self.horizontal if horizontal is None else horizontal,
        )

    def _trig(self, point, vertical, horizontal):
        values = self.vectors @ np.asarray(point, dtype=float)
        sin, cos = np.sin(values), np.cos(values)
        eps = settings()["eps_pole"]

        for mask, trig, name in ((vertical, sin, "sin"), (horizontal, cos, "cos")):
            poles = mask & (np.abs(trig) <= eps)
            if poles.any():
                index = int(np.flatnonzero(poles)[0])
                raise DomainError(
                    f"{name} {self.labels[index]}(Y) = {trig[index]:.3g} is within the pole guard",
                    margin=float(abs(trig[index])),
                )

        return values, sin, cos

    def coefficients(self, point, vertical=None, horizontal=None) -> np.ndarray:
        """Scalar weight of every β♯ in the field"""
        vertical, horizontal = self._masks(vertical, horizontal)
        _, sin, cos = self._trig(point, vertical, horizontal)

        weights = np.zeros(len(self.labels))
        weights[vertical] -= self.m_V[vertical] * cos[vertical] / sin[vertical]
        weights[horizontal] += self.m_H[horizontal] * sin[horizontal] / cos[horizontal]
        return weights

    def field(self, point, vertical=None, horizontal=None) -> np.ndarray:
        return self.vectors.T @ self.coefficients(point, vertical, horizontal)

    def rounding_bound(self, point, vertical=None, horizontal=None) -> float:
        """
        First-order bound on the rounding error of :meth:`field`

        An argument error ``δθ ≈ eps·(|β(Y)| + ‖β‖·‖Y‖)`` moves ``cot`` by
        ``δθ/sin²`` and ``tan`` by ``δθ/cos²``, so near a pole the error grows
        like the square of the term.
        """
        vertical, horizontal = self._masks(vertical, horizontal)
        values, sin, cos = self._trig(point, vertical, horizontal)

        lengths = np.linalg.norm(self.vectors, axis=1)
        delta = np.finfo(float).eps * (np.abs(values) + lengths * np.linalg.norm(point))

        slopes = np.zeros(len(self.labels))
        slopes[vertical] += self.m_V[vertical] / sin[vertical] ** 2
        slopes[horizontal] += self.m_H[horizontal] / cos[horizontal] ** 2
        return float(np.sum(slopes * delta * lengths))

    def potential(self, point, vertical=None, horizontal=None) -> float:
        vertical, horizontal = self._masks(vertical, horizontal)
        _, sin, cos = self._trig(point, vertical, horizontal)

        return float(
            -np.sum(self.m_V[vertical] * np.log(np.abs(sin[vertical])))
            - np.sum(self.m_H[horizontal] * np.log(np.abs(cos[horizontal])))
        )

    def hessian(self, point, vertical=None, horizontal=None) -> np.ndarray:
        vertical, horizontal = self._masks(vertical, horizontal)
        _, sin, cos = self._trig(point, vertical, horizontal)

        weights = np.zeros(len(self.labels))
        weights[vertical] += self.m_V[vertical] / sin[vertical] ** 2
        weights[horizontal] += self.m_H[horizontal] / cos[horizontal] ** 2
        return self.vectors.T @ (weights[:, None] * self.vectors)


@lru_cache(maxsize=None)
def root_arrays(chamber: Chamber) -> RootArrays:
    roots = chamber.roots
    return RootArrays(
        vectors=np.array([root.vector for root in roots], dtype=float),
        m_V=np.array([root.m_V for root in roots], dtype=float),
        m_H=np.array([root.m_H for root in roots], dtype=float),
        labels=tuple(root.label for root in roots),
    )


def _prepare(domain: Domain, point) -> Tuple[Chamber, RootArrays, np.ndarray]:
    cham = as_chamber(domain)
    point = np.asarray(point, dtype=float)
    cham.require_interior(point, guard=settings()["eps_pole"])
    return cham, root_arrays(cham), point


def vector_field_X(domain: Domain, point) -> np.ndarray:
    """
    Mean curvature vector of the orbit through ``point``

    Raises:
        ``DomainError``: point on or outside the chamber
    """
    _, arrays, point = _prepare(domain, point)
    return arrays.field(point)


def gradient_rho(domain: Domain, point) -> np.ndarray:
    return vector_field_X(domain, point)


def potential_rho(domain: Domain, point) -> float:
    _, arrays, point = _prepare(domain, point)
    return arrays.potential(point)


def hessian_rho(domain: Domain, point) -> np.ndarray:
    _, arrays, point = _prepare(domain, point)
    return arrays.hessian(point)


@dataclass(frozen=True)
class SpectrumEntry:
    eigenvalue: float
    multiplicity: int
    root_index: int
    block: str
    label: str = ""

    @property
    def origin(self) -> Tuple[int, str]:
        return self.root_index, self.block


def orbit_shape_spectrum(domain: Domain, point, v) -> List[SpectrumEntry]:
    """
    Eigenvalues of the shape operator of the orbit through ``point`` in direction ``v``

    A vertical block gives ``−β(v)/tan β(Y0)``, a horizontal one ``β(v)·tan β(Y0)``.
    """
    cham, arrays, point = _prepare(domain, point)
    v = np.asarray(v, dtype=float)

    entries = []
    for index, root in enumerate(cham.roots):
        value, along = root(point), root(v)
        if root.vertical:
            entries.append(
                SpectrumEntry(-along / np.tan(value), root.m_V, index, "vertical", root.label)
            )
        if root.horizontal:
            entries.append(
                SpectrumEntry(along * np.tan(value), root.m_H, index, "horizontal", root.label)
            )

    return entries


def spectrum_trace(entries: List[SpectrumEntry]) -> float:
    return float(np.sum([e.multiplicity * e.eigenvalue for e in entries]))


def shape_sup_norm(domain: Domain, point) -> float:
    """Largest principal curvature over all unit normals"""
    _, arrays, point = _prepare(domain, point)
    values = arrays.vectors @ point
    norms = np.linalg.norm(arrays.vectors, axis=1)

    candidates = np.concatenate(
        [
            norms[arrays.vertical] / np.abs(np.tan(values[arrays.vertical])),
            norms[arrays.horizontal] * np.abs(np.tan(values[arrays.horizontal])),
        ]
    )
    return float(np.max(candidates))


def min_hessian_eigenvalue(domain: Domain, point, matrix: Optional[np.ndarray] = None) -> float:
    if matrix is None:
        matrix = hessian_rho(domain, point)

    return float(np.min(np.linalg.eigvalsh(matrix)))
