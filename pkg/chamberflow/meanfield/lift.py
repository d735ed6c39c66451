#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

"""
Isoparametric lift of an orbit

Around a basepoint ``Y0`` every root ``β`` turns into a family of parallel
focal hyperplanes ``λ(w) = 1 + b·k``.  Even ``k`` carry multiplicity
``m_e``, odd ``k`` carry ``m_o``.  With

    θ_a(w) = (π / 2b_a)·(1 − λ_a(w))

the mean curvature of the parallel lift is

    H̃(w) = Σ (m_e cot θ_a − m_o tan θ_a)·(π / 2b_a)·λ_a♯

which equals ``X(Y0 + w)``.
"""

import math
import logging

import numpy as np

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .field import Domain, _prepare
from ..config import settings
from ..types import ChamberflowError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurvatureEntry:
    lam: Tuple[float, ...]
    b: float
    m_e: int
    m_o: int
    label: str = ""

    def __post_init__(self):
        if not any(self.lam):
            raise ChamberflowError(f"Curvature entry {self.label or '?'} has λ = 0")

        if self.m_e < 0 or self.m_o < 0:
            raise ChamberflowError(f"Curvature entry {self.label}: negative multiplicity")

    @property
    def normal(self) -> np.ndarray:
        """Curvature normal λ♯"""
        return np.asarray(self.lam, dtype=float)

    @property
    def scale(self) -> float:
        return math.pi / (2 * self.b)


@dataclass(frozen=True)
class CurvatureFamily:
    entries: Tuple[CurvatureEntry, ...]
    basepoint: Optional[Tuple[float, ...]] = None

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def normals(self) -> np.ndarray:
        return np.array([entry.lam for entry in self.entries], dtype=float)

    @property
    def b(self) -> np.ndarray:
        return np.array([entry.b for entry in self.entries], dtype=float)

    @property
    def m_e(self) -> np.ndarray:
        return np.array([entry.m_e for entry in self.entries], dtype=float)

    @property
    def m_o(self) -> np.ndarray:
        return np.array([entry.m_o for entry in self.entries], dtype=float)


def lift_family(domain: Domain, basepoint) -> CurvatureFamily:
    """
    Curvature data of the lift at ``basepoint``

    ===========  ===========================  ===============  ===========
    root         λ                            b                m_e, m_o
    ===========  ===========================  ===============  ===========
    V only       −β / β(Y0)                   π / β(Y0)        m_V, m_V
    H only       −β / (β(Y0) + π/2)           π / (β(Y0)+π/2)  m_H, m_H
    V and H      −β / β(Y0)                   π / (2β(Y0))     m_V, m_H
    ===========  ===========================  ===============  ===========
    """
    cham, _, point = _prepare(domain, basepoint)

    entries = []
    for root in cham.roots:
        value = root(point)
        vector = root.array

        if root.vertical and root.horizontal:
            lam, b, m_e, m_o = -vector / value, math.pi / (2 * value), root.m_V, root.m_H
        elif root.vertical:
            lam, b, m_e, m_o = -vector / value, math.pi / value, root.m_V, root.m_V
        else:
            shifted = value + math.pi / 2
            lam, b, m_e, m_o = -vector / shifted, math.pi / shifted, root.m_H, root.m_H

        entries.append(CurvatureEntry(tuple(lam), float(b), m_e, m_o, root.label))

    return CurvatureFamily(tuple(entries), tuple(point))


def _angles(family: CurvatureFamily, w) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    w = np.asarray(w, dtype=float)
    along = family.normals @ w

    outside = np.flatnonzero(along >= 1)
    if outside.size:
        index = int(outside[0])
        raise DomainError(
            f"λ_{family.entries[index].label}(w) = {along[index]:.6g} is not below 1",
            margin=float(1 - along[index]),
        )

    theta = (math.pi / (2 * family.b)) * (1 - along)
    sin, cos = np.sin(theta), np.cos(theta)
    eps = settings()["eps_pole"]

    for index, entry in enumerate(family.entries):
        if (entry.m_e and abs(sin[index]) <= eps) or (entry.m_o and abs(cos[index]) <= eps):
            raise DomainError(
                f"Entry {index} ({entry.label}) sits on a focal hyperplane at w",
                margin=float(min(abs(sin[index]), abs(cos[index]))),
            )

    return theta, sin, cos


def lift_mean_curvature(family: CurvatureFamily, w) -> np.ndarray:
    """
    Mean curvature of the parallel lift through ``w``

    Raises:
        ``DomainError``: some λ_a(w) >= 1 or a term hits its pole
    """
    _, sin, cos = _angles(family, w)
    weights = (family.m_e * cos / sin - family.m_o * sin / cos) * (math.pi / (2 * family.b))
    return family.normals.T @ weights


def lifted_potential(family: CurvatureFamily, w) -> float:
    """−Σ (m_e log sin θ_a + m_o log cos θ_a); its gradient is :func:`lift_mean_curvature`"""
    _, sin, cos = _angles(family, w)

    even = family.m_e > 0
    odd = family.m_o > 0
    return float(
        -np.sum(family.m_e[even] * np.log(np.abs(sin[even])))
        - np.sum(family.m_o[odd] * np.log(np.abs(cos[odd])))
    )


def lifted_hessian(family: CurvatureFamily, w) -> np.ndarray:
    _, sin, cos = _angles(family, w)
    weights = (family.m_e / sin**2 + family.m_o / cos**2) * (math.pi / (2 * family.b)) ** 2
    return family.normals.T @ (weights[:, None] * family.normals)


def _window(offset: float, J: int) -> np.ndarray:
    """Integers ``j`` with ``|offset + j| <= J + 1/2``"""
    low = math.ceil(-J - 0.5 - offset)
    high = math.floor(J + 0.5 - offset)
    return np.arange(low, high + 1)


@dataclass(frozen=True)
class TraceResult:
    partial: float
    closed: float

    @property
    def error(self) -> float:
        return abs(self.partial - self.closed)


def regularized_trace(family: CurvatureFamily, w, v, J: int) -> TraceResult:
    """
    Truncated trace of the lifted shape operator against its closed form

    The principal curvature of index ``k`` in direction ``v`` is
    ``λ(v) / (1 + b·k − λ(w)) = λ(v) / (2b·(x + j))`` with ``k = 2j`` and
    ``x = (1 − λ(w)) / 2b`` for even ``k``, ``x + 1/2`` for odd ``k``.
    The partial sum keeps the terms with ``|o + j| <= J + 1/2``, ``o`` the
    offset of the parity. For even ``k`` with ``0 < x < 1/2`` that is
    ``-J <= j <= J``; for odd ``k`` the offset ``x + 1/2`` lies in ``(1/2, 1)``
    and the window is ``-J - 1 <= j <= J - 1``. Either way the kept
    denominators are symmetric about zero up to the offset.

    Raises:
        ``DomainError``: a retained denominator vanishes, or ``w`` is outside the lift chamber
    """
    if J < 0:
        raise DomainError("Truncation must be nonnegative")

    closed = float(np.dot(lift_mean_curvature(family, w), v))
    w, v = np.asarray(w, dtype=float), np.asarray(v, dtype=float)

    terms: List[float] = []
    for index, entry in enumerate(family.entries):
        along_v = float(np.dot(entry.lam, v))
        if along_v == 0:
            continue

        base = (1 - float(np.dot(entry.lam, w))) / (2 * entry.b)
        for parity, multiplicity, offset in ((0, entry.m_e, base), (1, entry.m_o, base + 0.5)):
            if not multiplicity:
                continue

            window = _window(offset, J)
            shifted = offset + window
            if np.any(shifted == 0):
                k = 2 * int(window[shifted == 0][0]) + parity
                raise DomainError(f"Focal denominator at entry {index}, k = {k}")

            terms.extend(multiplicity * along_v / (2 * entry.b * shifted))

    return TraceResult(partial=math.fsum(terms), closed=closed)


@dataclass(frozen=True)
class PrincipalCurvature:
    value: float
    multiplicity: int
    entry: int
    k: int


def lift_principal_curvatures(
    family: CurvatureFamily, w, v, J: int
) -> List[PrincipalCurvature]:
    """
    Principal curvatures ``λ_a(v) / (1 + b_a·k − λ_a(w))`` of the parallel lift, ``|k| <= J``

    Zero multiplicities are left out.

    Raises:
        ``DomainError``: ``w`` lies on a focal hyperplane ``(a, k)``
    """
    w, v = np.asarray(w, dtype=float), np.asarray(v, dtype=float)

    result = []
    for index, entry in enumerate(family.entries):
        along_w, along_v = float(np.dot(entry.lam, w)), float(np.dot(entry.lam, v))
        for k in range(-J, J + 1):
            multiplicity = entry.m_e if k % 2 == 0 else entry.m_o
            if not multiplicity:
                continue

            denominator = 1 + entry.b * k - along_w
            if denominator == 0:
                raise DomainError(f"w is focal for entry {index} ({entry.label}), k = {k}")

            result.append(PrincipalCurvature(along_v / denominator, multiplicity, index, k))

    return result


def family_from_entries(entries: Sequence[Tuple], basepoint=None) -> CurvatureFamily:
    """Hand-built family from ``(lam, b, m_e, m_o)`` tuples"""
    return CurvatureFamily(
        tuple(CurvatureEntry(tuple(map(float, lam)), float(b), int(m_e), int(m_o)) for lam, b, m_e, m_o in entries),
        None if basepoint is None else tuple(basepoint),
    )
